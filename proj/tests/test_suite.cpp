#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "fraclap/errors.hpp"
#include "fraclap/suite.hpp"

using namespace fraclap;

TEST_CASE("norms suite passes and the report invariant holds") {
    SuiteConfig cfg;
    cfg.suite = "norms";
    Report rep = run_suite(cfg);
    CHECK(rep.total > 0);
    CHECK(rep.failed == 0);
    for (const CheckRecord& r : rep.records) {
        CHECK(r.pass == (std::abs(r.value - r.oracle) <= r.tol));
        CHECK(r.ms >= 0.0);
    }
}

TEST_CASE("empty parameter grid produces an empty passing report") {
    SuiteConfig cfg;
    cfg.suite = "leibniz";
    cfg.s_values = std::vector<double>{};
    Report rep = run_suite(cfg);
    CHECK(rep.total == 0);
    CHECK(rep.failed == 0);
}

TEST_CASE("unknown suite raises ConfigError") {
    SuiteConfig cfg;
    cfg.suite = "nonsense";
    CHECK_THROWS_AS(run_suite(cfg), ConfigError);
}

TEST_CASE("reports are deterministic modulo wall times") {
    SuiteConfig cfg;
    cfg.suite = "norms";
    Report a = run_suite(cfg);
    Report b = run_suite(cfg);
    REQUIRE(a.records.size() == b.records.size());
    for (size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].id == b.records[i].id);
        CHECK(a.records[i].value == b.records[i].value);
        CHECK(a.records[i].oracle == b.records[i].oracle);
        CHECK(a.records[i].pass == b.records[i].pass);
    }
}

TEST_CASE("report serialization carries the documented schema") {
    SuiteConfig cfg;
    cfg.suite = "norms";
    Report rep = run_suite(cfg);
    const nlohmann::json j = report_to_json(rep);
    CHECK(j.contains("version"));
    CHECK(j.contains("config"));
    CHECK(j.contains("records"));
    CHECK(j.contains("summary"));
    CHECK(j["summary"]["total"] == rep.total);
    CHECK(j["summary"]["passed"] == rep.passed);
    CHECK(j["summary"]["failed"] == rep.failed);
    for (const auto& r : j["records"]) {
        for (const char* key : {"id", "suite", "inputs", "value", "oracle", "err_est", "tol",
                                "pass", "ms"})
            CHECK(r.contains(key));
    }
}

TEST_CASE("report files are written next to each other") {
    SuiteConfig cfg;
    cfg.suite = "norms";
    cfg.out_path = "/tmp/fraclap_test_report.json";
    Report rep = run_suite(cfg);
    (void)rep;
    std::ifstream j("/tmp/fraclap_test_report.json");
    CHECK(j.good());
    std::ifstream c("/tmp/fraclap_test_report.csv");
    CHECK(c.good());
    std::string header;
    std::getline(c, header);
    CHECK(header == "id,suite,value,oracle,err_est,tol,pass,ms,note");
    std::remove("/tmp/fraclap_test_report.json");
    std::remove("/tmp/fraclap_test_report.csv");
}

TEST_CASE("config file parsing and overrides") {
    const char* path = "/tmp/fraclap_test_config.txt";
    {
        std::ofstream f(path);
        f << "# comment line\n";
        f << "suite = norms\n";
        f << "dim = 2\n";
        f << "s = 0.25, 0.5\n";
        f << "seed = 7\n";
        f << "mc_samples = 123456\n";
        f << "presets = gaussian, bump(0.9)\n";
    }
    SuiteConfig cfg = parse_config_file(path);
    CHECK(cfg.suite == "norms");
    CHECK(cfg.seed == 7);
    CHECK(cfg.mc_samples == 123456);
    REQUIRE(cfg.s_values.has_value());
    CHECK(cfg.s_values->size() == 2);
    REQUIRE(cfg.presets.has_value());
    CHECK((*cfg.presets)[1] == "bump(0.9)");
    std::remove(path);

    {
        std::ofstream f(path);
        f << "bogus_key = 3\n";
    }
    CHECK_THROWS_AS(parse_config_file(path), ConfigError);
    std::remove(path);
}

TEST_CASE("numerical failures become failed records, not crashes") {
    // A leibniz run with an absurd angular rule still produces records.
    SuiteConfig cfg;
    cfg.suite = "polarization";
    cfg.presets = std::vector<std::string>{"this-preset-does-not-exist"};
    Report rep = run_suite(cfg);
    CHECK(rep.total == 2); // two tau values
    CHECK(rep.failed == 2);
    for (const CheckRecord& r : rep.records) CHECK(r.note.find("error:") == 0);
}
