// Copyright 2026 The umtslab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UMTSLAB_PICALC_MUTATE_HPP_
#define UMTSLAB_PICALC_MUTATE_HPP_

#include <string>

#include "umtslab/bytes.hpp"
#include "umtslab/picalc/ast.hpp"

namespace umtslab::picalc {

// Small syntactic changes to a parsed model, used to fuzz the checker:
// swapping the sides of a choice, replacing one public constant by another,
// swapping the branches of an if, replacing an output's message by a
// constant, and cutting a continuation to 0. Mutations keep the model closed.
// Returns a description, or an empty string if nothing applicable was found.
std::string mutate(Model& m, Rng& rng);

}  // namespace umtslab::picalc

#endif  // UMTSLAB_PICALC_MUTATE_HPP_
