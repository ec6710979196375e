#ifndef SGWP_SGWP_HPP
#define SGWP_SGWP_HPP

#include "sgwp/bruck_reilly.hpp"
#include "sgwp/builders.hpp"
#include "sgwp/cfg.hpp"
#include "sgwp/construction_specs.hpp"
#include "sgwp/constructions.hpp"
#include "sgwp/core.hpp"
#include "sgwp/finite_semigroup.hpp"
#include "sgwp/free_products.hpp"
#include "sgwp/gsm.hpp"
#include "sgwp/language.hpp"
#include "sgwp/nfa.hpp"
#include "sgwp/oracles.hpp"
#include "sgwp/pda.hpp"
#include "sgwp/rewriting.hpp"
#include "sgwp/semilattice.hpp"
#include "sgwp/word_problem.hpp"

#endif  // SGWP_SGWP_HPP
