#include <doctest.h>

#include <cstdio>
#include <sstream>

#include "bd/io.hpp"

using namespace bd;

namespace {

SampleRecord example_record() {
    SampleRecord rec;
    rec.d = 1;
    rec.box_n = 5;
    rec.mode = "geometric";
    rec.param = 1e-3;
    rec.replica = 7;
    rec.derived_seed = 123456789;
    rec.n_updates = 42;
    rec.elapsed = 0.0;
    rec.window = 2;
    rec.raw_origin = 17;
    rec.heights = {-1, 0, 0, 1, 3};
    return rec;
}

}  // namespace

TEST_CASE("sample record JSON round trip") {
    SampleRecord rec = example_record();
    std::string line = to_json_line(rec);
    CHECK(line.find('\n') == std::string::npos);
    SampleRecord back = sample_record_from_json(line);
    CHECK(back.d == rec.d);
    CHECK(back.box_n == rec.box_n);
    CHECK(back.mode == rec.mode);
    CHECK(back.param == rec.param);
    CHECK(back.replica == rec.replica);
    CHECK(back.derived_seed == rec.derived_seed);
    CHECK(back.n_updates == rec.n_updates);
    CHECK(back.window == rec.window);
    CHECK(back.raw_origin == rec.raw_origin);
    CHECK(back.heights == rec.heights);
}

TEST_CASE("sample record validation") {
    SampleRecord rec = example_record();

    rec.heights = {-1, 0, 0, 1};  // wrong length for window 2
    CHECK_THROWS(sample_record_from_json(to_json_line(rec)));

    rec = example_record();
    rec.heights[2] = 5;  // origin entry must be 0
    CHECK_THROWS(sample_record_from_json(to_json_line(rec)));

    rec = example_record();
    rec.schema_version = 99;
    CHECK_THROWS(sample_record_from_json(to_json_line(rec)));

    CHECK_THROWS(sample_record_from_json("not json"));
}

TEST_CASE("record <-> centered sample round trip") {
    SampleRecord rec = example_record();
    CenteredSample s = sample_from_record(rec);
    CHECK(s.d == rec.d);
    CHECK(s.box_n == rec.box_n);
    CHECK(s.window == rec.window);
    CHECK(s.heights == rec.heights);
    CHECK(s.seed == rec.derived_seed);

    SampleRecord again =
        make_record(s, SamplerMode::Geometric, rec.param, rec.replica,
                    rec.derived_seed);
    CHECK(to_json_line(again) == to_json_line(rec));
}

TEST_CASE("mode names round trip") {
    for (SamplerMode m : {SamplerMode::Geometric, SamplerMode::Exponential,
                          SamplerMode::Cesaro})
        CHECK(mode_from_name(mode_name(m)) == m);
    CHECK_THROWS(mode_from_name("bogus"));
}

TEST_CASE("checkpoint round trip including engine state") {
    Rng rng(987);
    rng.uniform();  // advance so the state is nontrivial
    Checkpoint cp;
    cp.d = 1;
    cp.box_n = 3;
    cp.step = 1000;
    cp.rng_state = rng.save_state();
    cp.heights = {0, 1, 2, 3, 2, 1, 0};

    std::string path = "test_checkpoint_tmp.json";
    write_checkpoint(path, cp);
    auto back = read_checkpoint(path);
    std::remove(path.c_str());
    REQUIRE(back.has_value());
    CHECK(back->d == cp.d);
    CHECK(back->box_n == cp.box_n);
    CHECK(back->step == cp.step);
    CHECK(back->heights == cp.heights);

    // restored engine produces the same stream
    Rng restored(0);
    restored.load_state(back->rng_state);
    Rng expect(987);
    expect.uniform();
    for (int i = 0; i < 100; ++i) CHECK(restored.uniform() == expect.uniform());

    CHECK_FALSE(read_checkpoint("definitely_missing_file.json").has_value());
}

TEST_CASE("csv writer: header plus full-precision rows") {
    std::ostringstream os;
    write_csv(os, {"t", "value"}, {{1.0, 0.1234567890123456789}, {2.0, -3.5}});
    std::string out = os.str();
    CHECK(out.rfind("t,value\n", 0) == 0);
    CHECK(out.find("0.12345678901234568") != std::string::npos);
    CHECK(out.find("2,-3.5") != std::string::npos);
}
