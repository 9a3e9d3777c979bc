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

#include "rbdephase/io.h"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

#include "rbdephase/errors.h"

namespace rbdephase {
namespace {

TEST(FormatTest, SeventeenDigitsRoundTrip) {
    for (double x : {0.1, 1.0 / 3.0, 0.7353970877671516, 1e-300, -2.5e17}) {
        EXPECT_EQ(std::stod(format_number(x)), x);
    }
    EXPECT_EQ(format_number(0.1), "0.10000000000000001");
}

TEST(CurveCsvTest, RoundTrip) {
    DecayCurve a{NoiseModel::Classical, GroupKind::Pauli, {{1, 0.9, 0.0, DecayMethod::ExactEnum}, {2, 1.0 / 3.0, 0.0, DecayMethod::ExactEnum}}};
    DecayCurve b{NoiseModel::Quantum, GroupKind::Clif, {{5, 0.25, 1e-3, DecayMethod::MonteCarlo}}};
    std::stringstream s;
    write_curves_csv(s, {a, b});
    const std::string text = s.str();
    EXPECT_EQ(text.substr(0, text.find('\n')), kCurveCsvHeader);
    const auto curves = read_curves_csv(s);
    ASSERT_EQ(curves.size(), 2U);
    EXPECT_EQ(curves[0].group, GroupKind::Pauli);
    ASSERT_EQ(curves[0].points.size(), 2U);
    EXPECT_EQ(curves[0].points[1].value, 1.0 / 3.0);
    EXPECT_EQ(curves[1].model, NoiseModel::Quantum);
    EXPECT_EQ(curves[1].points[0].method, DecayMethod::MonteCarlo);
    EXPECT_EQ(curves[1].points[0].std_error, 1e-3);
}

TEST(CurveCsvTest, MalformedInputNamesLine) {
    auto read = [](const std::string &text) {
        std::istringstream in(text);
        return read_curves_csv(in);
    };
    EXPECT_THROW(read(""), IoError);
    EXPECT_THROW(read("m,value\n"), IoError);
    const std::string header = std::string(kCurveCsvHeader) + "\n";
    try {
        read(header + "1,0.5,0,exact,pauli,classical\n2,abc,0,exact,pauli,classical\n");
        FAIL();
    } catch (const IoError &e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
    EXPECT_THROW(read(header + "1,0.5,0,exact,pauli\n"), IoError);
    EXPECT_THROW(read(header + "1,0.5,-1,exact,pauli,classical\n"), IoError);
    EXPECT_THROW(read(header + "1,0.5,0,guess,pauli,classical\n"), IoError);
    EXPECT_THROW(read(header + "x,0.5,0,exact,pauli,classical\n"), IoError);
}

TEST(ModelJsonTest, RoundTripEveryType) {
    const std::vector<SpectralModel> models{
        DcSpectrum{0.1}, WhiteSpectrum{0.2}, RectangularSpectrum{0.1, 2.5}, DoubleGaussianSpectrum{0.1, 10.0, 0.5},
        TabulatedSpectrum{{0.0, 1.0, 2.0}, {1.0, 0.5, 0.0}}};
    for (const auto &m : models) {
        const auto back = spectral_model_from_json(spectral_model_to_json(m));
        EXPECT_EQ(back.index(), m.index());
        EXPECT_EQ(spectral_model_to_json(back), spectral_model_to_json(m));
    }
    EXPECT_THROW(spectral_model_from_json("{\"type\":\"pink\"}"), IoError);
    EXPECT_THROW(spectral_model_from_json("{\"type\":\"dc\",\"eta\":\"big\"}"), IoError);
    EXPECT_THROW(spectral_model_from_json("not json"), IoError);
}

TEST(TableJsonTest, RoundTripIsExact) {
    DecoherenceTable t = build_table(DoubleGaussianSpectrum{0.1, 10.0, 1.0}, 5, 2.0, true);
    t.truncated = true;
    const std::string text = table_to_json(t);
    const DecoherenceTable back = table_from_json(text);
    EXPECT_EQ(back.gamma, t.gamma);
    EXPECT_EQ(back.phi, t.phi);
    EXPECT_EQ(back.beta_over_dt, t.beta_over_dt);
    EXPECT_EQ(back.method, TableMethod::Quadrature);
    EXPECT_TRUE(back.truncated);
    ASSERT_TRUE(back.model.has_value());
    EXPECT_EQ(table_to_json(back), text);
    EXPECT_LT(text.find("\"gamma\""), text.find("\"phi\""));
}

TEST(TableJsonTest, RejectsBadTables) {
    EXPECT_THROW(table_from_json("{}"), IoError);
    EXPECT_THROW(table_from_json("{\"gamma\":[0.1,\"x\"]}"), IoError);
    EXPECT_THROW(table_from_json("{\"gamma\":[0.1,0.2],\"phi\":[0.1,0.2]}"), IoError);
    EXPECT_THROW(table_from_json("{\"gamma\":[0.1],\"truncated\":1}"), IoError);
    const auto manual = table_from_json("{\"gamma\":[0.1,0.02],\"phi\":[0.03]}");
    EXPECT_EQ(manual.method, TableMethod::Manual);
    EXPECT_EQ(manual.phi_at(1), 0.03);
}

TEST(FitJsonTest, KeysAndOrder) {
    FitResult r;
    r.model = FitModel::SingleExp;
    r.params = SingleExpParams{0.99, 0.95, 0.0};
    r.residual_rms = 1e-12;
    r.converged = true;
    const std::string text = fit_result_to_json(r);
    EXPECT_NE(text.find("\"model\""), std::string::npos);
    EXPECT_LT(text.find("\"model\""), text.find("\"params\""));
    EXPECT_LT(text.find("\"params\""), text.find("\"residual_rms\""));
    EXPECT_LT(text.find("\"residual_rms\""), text.find("\"converged\""));
    EXPECT_NE(text.find("\"single_exp\""), std::string::npos);
    EXPECT_NE(text.find("\"p\""), std::string::npos);
}

TEST(SpectrumFileTest, ReadsTwoColumns) {
    const auto path = (std::filesystem::temp_directory_path() / "rbdephase_io_spectrum.txt").string();
    write_text_file(path, "# x S\n0 1\n1 0.5\n\n2 0\n");
    const auto t = read_spectrum_file(path);
    EXPECT_EQ(t.x, (std::vector<double>{0.0, 1.0, 2.0}));
    EXPECT_EQ(t.s, (std::vector<double>{1.0, 0.5, 0.0}));
    write_text_file(path, "0 1\n1\n");
    EXPECT_THROW(read_spectrum_file(path), IoError);
    std::filesystem::remove(path);
    EXPECT_THROW(read_text_file(path), IoError);
}

}  // namespace
}  // namespace rbdephase
