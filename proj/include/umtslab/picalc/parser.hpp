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

#ifndef UMTSLAB_PICALC_PARSER_HPP_
#define UMTSLAB_PICALC_PARSER_HPP_

#include <string>
#include <string_view>

#include "umtslab/picalc/ast.hpp"

namespace umtslab::picalc {

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int col)
      : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(col)),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

class SyntaxError : public ParseError {
 public:
  using ParseError::ParseError;
};

class ArityMismatch : public ParseError {
 public:
  using ParseError::ParseError;
};

class UnboundIdentifier : public ParseError {
 public:
  using ParseError::ParseError;
};

// Parses declarations (free, fun, reduc, let) and the main process. Macros
// are expanded at their use site, so free identifiers in a macro body resolve
// in the caller's scope. Every binder is given a fresh identity.
//
// `else` binds to the innermost `if` or pattern-matching `let`; a `let` whose
// pattern is a single variable has no else branch.
Model parse_model(std::string_view source);

// Declarations followed by the expanded main process. Binders are printed as
// <base>_<n> with n their position in a depth-first walk, so
// pretty(parse_model(pretty(m))) == pretty(m).
std::string pretty(const Model& m);
std::string pretty_process(const Model& m, ProcId p);

}  // namespace umtslab::picalc

#endif  // UMTSLAB_PICALC_PARSER_HPP_
