// Copyright 2026 The psdrec Authors
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

#ifndef PSDREC_MODEL_IO_HPP
#define PSDREC_MODEL_IO_HPP

// Line-oriented model files.
//
//   PSDREC v1 | kind=quantum | D=2 | U=943 | I=1682 | Z=2 | field=complex
//   user 0 <D*D row-major entries>
//   ...
//   item 0 0 <D*D row-major entries>
//   item 0 1 ...
//
// Quantum entries are `re,im` pairs (field=complex) or plain reals
// (field=real). NNM files (kind=nnm, field=real) carry D reals per record.
// Indices are 0-based; reals use 17 significant digits so files round-trip
// exactly.

#include <iosfwd>
#include <string>
#include <variant>

#include "psdrec/models.hpp"

namespace psdrec {

using AnyModel = std::variant<QuantumModel, NnmModel>;

void write_model(std::ostream &out, const QuantumModel &m);
void write_model(std::ostream &out, const NnmModel &m);
/// Throws ParseError (with line number) on malformed input.
AnyModel read_model(std::istream &in);

void save_model(const std::string &path, const AnyModel &m);
AnyModel load_model(const std::string &path);

}  // namespace psdrec

#endif  // PSDREC_MODEL_IO_HPP
