// Copyright 2026 The rbdephase Authors
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

#ifndef RBDEPHASE_IO_H
#define RBDEPHASE_IO_H

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rbdephase/decay.h"
#include "rbdephase/fit.h"
#include "rbdephase/spectra.h"

namespace rbdephase {

inline constexpr std::string_view kCurveCsvHeader = "m,value,stderr,method,group,model";

/// Shortest form with 17 significant digits; round-trips any double.
std::string format_number(double x);

/// Writes the header line followed by one row per point of every curve.
void write_curves_csv(std::ostream &out, const std::vector<DecayCurve> &curves);

/// Parses a curve CSV. Rows are grouped into curves by (method, group,
/// model) in order of first appearance. Throws IoError on any schema
/// violation, naming the offending line.
std::vector<DecayCurve> read_curves_csv(std::istream &in);

std::string spectral_model_to_json(const SpectralModel &model);
SpectralModel spectral_model_from_json(std::string_view text);

/// {"gamma", "phi", "beta_over_dt", "model", "method", "truncated"}.
std::string table_to_json(const DecoherenceTable &table);
/// Throws IoError on malformed documents.
DecoherenceTable table_from_json(std::string_view text);

/// {"model", "params", "residual_rms", "converged"}.
std::string fit_result_to_json(const FitResult &result);

/// Two-column (x, S) text file, comma or whitespace separated; lines
/// starting with '#' are skipped.
TabulatedSpectrum read_spectrum_file(const std::string &path);

std::string read_text_file(const std::string &path);
void write_text_file(const std::string &path, std::string_view contents);

}  // namespace rbdephase

#endif  // RBDEPHASE_IO_H
