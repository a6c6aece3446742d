#include "bd/io.hpp"

#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace bd {

using nlohmann::json;

std::string mode_name(SamplerMode mode) {
    switch (mode) {
        case SamplerMode::Geometric: return "geometric";
        case SamplerMode::Exponential: return "exponential";
        case SamplerMode::Cesaro: return "cesaro";
    }
    throw std::logic_error("mode_name");
}

SamplerMode mode_from_name(const std::string& name) {
    if (name == "geometric") return SamplerMode::Geometric;
    if (name == "exponential") return SamplerMode::Exponential;
    if (name == "cesaro") return SamplerMode::Cesaro;
    throw std::invalid_argument("unknown sampler mode: " + name);
}

std::string to_json_line(const SampleRecord& rec) {
    json j{{"schema_version", rec.schema_version},
           {"d", rec.d},
           {"box_n", rec.box_n},
           {"mode", rec.mode},
           {"param", rec.param},
           {"replica", rec.replica},
           {"derived_seed", rec.derived_seed},
           {"n_updates", rec.n_updates},
           {"elapsed", rec.elapsed},
           {"window", rec.window},
           {"raw_origin", rec.raw_origin},
           {"heights", rec.heights}};
    return j.dump();
}

SampleRecord sample_record_from_json(const std::string& line) {
    json j = json::parse(line);
    SampleRecord rec;
    rec.schema_version = j.at("schema_version").get<int>();
    if (rec.schema_version != kSchemaVersion)
        throw std::runtime_error("sample record: unsupported schema version");
    rec.d = j.at("d").get<int>();
    rec.box_n = j.at("box_n").get<int>();
    rec.mode = j.at("mode").get<std::string>();
    rec.param = j.at("param").get<double>();
    rec.replica = j.at("replica").get<std::uint64_t>();
    rec.derived_seed = j.at("derived_seed").get<std::uint64_t>();
    rec.n_updates = j.at("n_updates").get<std::uint64_t>();
    rec.elapsed = j.at("elapsed").get<double>();
    rec.window = j.at("window").get<int>();
    rec.raw_origin = j.at("raw_origin").get<Height>();
    rec.heights = j.at("heights").get<std::vector<Height>>();
    const std::size_t expect = Box(rec.d, rec.window).size();
    if (rec.heights.size() != expect)
        throw std::runtime_error("sample record: wrong height count");
    if (rec.heights[expect / 2] != 0)
        throw std::runtime_error("sample record: origin entry not zero");
    return rec;
}

SampleRecord make_record(const CenteredSample& s, SamplerMode mode,
                         double param, std::uint64_t replica,
                         std::uint64_t derived_seed) {
    SampleRecord rec;
    rec.d = s.d;
    rec.box_n = s.box_n;
    rec.mode = mode_name(mode);
    rec.param = param;
    rec.replica = replica;
    rec.derived_seed = derived_seed;
    rec.n_updates = s.n_updates;
    rec.elapsed = s.elapsed;
    rec.window = s.window;
    rec.raw_origin = s.raw_origin;
    rec.heights = s.heights;
    return rec;
}

CenteredSample sample_from_record(const SampleRecord& rec) {
    CenteredSample s;
    s.d = rec.d;
    s.box_n = rec.box_n;
    s.window = rec.window;
    s.heights = rec.heights;
    s.n_updates = rec.n_updates;
    s.elapsed = rec.elapsed;
    s.raw_origin = rec.raw_origin;
    s.seed = rec.derived_seed;
    return s;
}

void write_checkpoint(const std::string& path, const Checkpoint& cp) {
    json j{{"schema_version", cp.schema_version},
           {"d", cp.d},
           {"box_n", cp.box_n},
           {"step", cp.step},
           {"rng_state", cp.rng_state},
           {"heights", cp.heights}};
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write checkpoint: " + path);
    os << j.dump() << '\n';
}

std::optional<Checkpoint> read_checkpoint(const std::string& path) {
    std::ifstream is(path);
    if (!is) return std::nullopt;
    json j;
    is >> j;
    Checkpoint cp;
    cp.schema_version = j.at("schema_version").get<int>();
    if (cp.schema_version != kSchemaVersion)
        throw std::runtime_error("checkpoint: unsupported schema version");
    cp.d = j.at("d").get<int>();
    cp.box_n = j.at("box_n").get<int>();
    cp.step = j.at("step").get<std::uint64_t>();
    cp.rng_state = j.at("rng_state").get<std::string>();
    cp.heights = j.at("heights").get<std::vector<Height>>();
    if (cp.heights.size() != Box(cp.d, cp.box_n).size())
        throw std::runtime_error("checkpoint: box mismatch");
    return cp;
}

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    for (std::size_t i = 0; i < header.size(); ++i)
        os << header[i] << (i + 1 < header.size() ? "," : "\n");
    os.precision(17);
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            os << row[i] << (i + 1 < row.size() ? "," : "\n");
}

}  // namespace bd
