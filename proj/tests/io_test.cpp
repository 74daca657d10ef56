#include "photodet/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "photodet/error.hpp"

using namespace photodet;
namespace io = photodet::io;

TEST(io_detector, round_trip) {
    for (const DetectorConfig& d : {DetectorConfig{0.8, PoissonianLimit{0.3}},
                                    DetectorConfig{0.1 + 0.2, FiniteModes{1.0 / 3.0, 1000000}}}) {
        const DetectorConfig back = io::detector_from_json(io::parse_json(io::dump(io::to_json(d))));
        EXPECT_EQ(back.efficiency, d.efficiency);
        EXPECT_EQ(mean_noise(back.noise), mean_noise(d.noise));
        EXPECT_EQ(back.noise.index(), d.noise.index());
    }
    const DetectorConfig parsed = io::detector_from_json(
        io::parse_json(R"({"efficiency":1,"noise":{"type":"finite","n_noise":0.5,"modes":4}})"));
    ASSERT_TRUE(is_finite_modes(parsed.noise));
    EXPECT_EQ(std::get<FiniteModes>(parsed.noise).modes, 4);
}

TEST(io_detector, rejects_malformed) {
    const char* bad[] = {
        R"({"noise":{"type":"poissonian","n_noise":0.5}})",
        R"({"efficiency":"high","noise":{"type":"poissonian","n_noise":0.5}})",
        R"({"efficiency":0.5,"noise":{"type":"lorentzian","n_noise":0.5}})",
        R"({"efficiency":0.5,"noise":{"type":"finite","n_noise":0.5}})",
        R"({"efficiency":0.5,"noise":{"type":"finite","n_noise":0.5,"modes":2.5}})",
        R"({"efficiency":1.5,"noise":{"type":"poissonian","n_noise":0.5}})",
        R"([1,2])",
    };
    for (const char* text : bad) EXPECT_THROW(io::detector_from_json(io::parse_json(text)), ValidationError) << text;
    EXPECT_THROW(io::parse_json("{\"efficiency\":"), ValidationError);
}

TEST(io_state, named_forms) {
    EXPECT_EQ(io::state_from_json(io::parse_json(R"({"type":"fock","param":3})")).pmf, fock_pmf(3).pmf);
    EXPECT_EQ(io::state_from_json(io::parse_json(R"({"type":"coherent","param":2})")).pmf, coherent_pmf(2.0).pmf);
    EXPECT_EQ(io::state_from_json(io::parse_json(R"({"type":"thermal","param":0.5})")).pmf, thermal_pmf(0.5).pmf);
    const PhotonStatistics renorm = io::state_from_json(io::parse_json(R"({"type":"pmf","p":[1,1],"renormalize":true})"));
    EXPECT_EQ(renorm.pmf, (std::vector<double>{0.5, 0.5}));
    EXPECT_THROW(io::state_from_json(io::parse_json(R"({"type":"fock","param":1.5})")), ValidationError);
    EXPECT_THROW(io::state_from_json(io::parse_json(R"({"type":"squeezed","param":1})")), ValidationError);
    EXPECT_THROW(io::state_from_json(io::parse_json(R"({"type":"pmf","p":[0.7,0.7]})")), ValidationError);
    EXPECT_THROW(io::state_from_json(io::parse_json(R"({"type":"pmf","p":["a"]})")), ValidationError);
}

TEST(io_state, round_trip_is_bit_faithful) {
    for (const PhotonStatistics& st : {coherent_pmf(2.3), thermal_pmf(0.7), fock_pmf(4)}) {
        const PhotonStatistics back = io::state_from_json(io::parse_json(io::dump(io::to_json(st))));
        EXPECT_EQ(back.pmf, st.pmf);
        EXPECT_EQ(back.tail_bound, st.tail_bound);
    }
}

TEST(io_counts, round_trip) {
    const CountDistribution c = count_distribution(coherent_pmf(1.7), {0.6, FiniteModes{0.4, 3}});
    const CountDistribution back = io::count_distribution_from_json(io::parse_json(io::dump(io::to_json(c))));
    EXPECT_EQ(back.pmf, c.pmf);
    EXPECT_EQ(back.tail_bound, c.tail_bound);
    EXPECT_EQ(back.provenance, c.provenance);
    EXPECT_THROW(io::count_distribution_from_json(io::parse_json(R"({"pmf":[]})")), ValidationError);
    EXPECT_THROW(io::count_distribution_from_json(io::parse_json(R"({"pmf":[1],"provenance":"guess"})")),
                 ValidationError);
}

TEST(io_json, shapes) {
    const ConditionalMatrix t = cond_matrix({0.5, PoissonianLimit{0.1}}, 1, 2);
    const io::Json j = io::to_json(t);
    EXPECT_EQ(j.at("m_max"), 2);
    EXPECT_EQ(j.at("n_max"), 1);
    EXPECT_EQ(j.at("entries").size(), 6u);
    EXPECT_EQ(j.at("column_tail_bounds").size(), 2u);

    oracle::SampleHistogram h;
    h.counts = {{0, 3}, {2, 1}};
    h.total_samples = 4;
    h.seed = 9;
    EXPECT_EQ(io::dump(io::to_json(h)), R"({"histogram":{"0":3,"2":1},"samples":4,"seed":9})");
}

TEST(io_csv, shapes) {
    std::ostringstream counts;
    io::write_csv(counts, CountDistribution{{0.25, 0.75}, 0.0, Provenance::AnalyticSeries, {}});
    EXPECT_EQ(counts.str(), "m,P\n0,0.25\n1,0.75\n");

    std::ostringstream matrix;
    io::write_csv(matrix, cond_matrix({0.5, PoissonianLimit{0.0}}, 1, 1));
    EXPECT_EQ(matrix.str(), "m\\n,0,1\n0,1,0.5\n1,0,0.5\ntail,0,0\n");

    EXPECT_EQ(io::csv_number(1.0 / 3.0), "0.333333333333");
    EXPECT_EQ(io::csv_number(1e-20), "1e-20");
}

TEST(io_argument, inline_and_file) {
    EXPECT_EQ(io::load_json_argument(R"(  {"a":1})").at("a"), 1);
    const std::string path = ::testing::TempDir() + "photodet_io_test.json";
    {
        std::ofstream out(path);
        out << R"({"type":"fock","param":2})";
    }
    EXPECT_EQ(io::state_from_json(io::load_json_argument(path)).pmf, fock_pmf(2).pmf);
    std::remove(path.c_str());
    EXPECT_THROW(io::load_json_argument("/nonexistent/file.json"), ValidationError);
}
