#pragma once

// Distribution-pair file formats:
//   JSON: {"support": ["a", ...], "p": [...], "q": [...]}
//   CSV : header `outcome,p,q`, one row per outcome, '.' decimals.

#include <iosfwd>
#include <string>

#include "bht/core.hpp"

namespace bht {

DiscretePair load_pair_json(std::istream& in);
DiscretePair load_pair_csv(std::istream& in);

/// Loads by extension (.json / .csv), falling back to content sniffing.
DiscretePair load_pair(const std::string& path);

}  // namespace bht
