#include "fillnorm/jobs.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fillnorm/errors.hpp"

namespace fillnorm {
namespace jobs {

namespace {

constexpr const char* kArtifactVersion = "fillnorm-1";

namespace fs = std::filesystem;
using documents::Json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// A document reference contributes its content to the cache key when it is a
// file, its name otherwise (built-in semantics are pinned by the version tag).
std::string ref_fingerprint(const std::string& ref) {
    if (!ref.empty() && fs::exists(ref)) return "file:" + read_file(ref);
    return "name:" + ref;
}

Caps effective_caps(const JobSpec& job) {
    if (job.cap_override) return job.caps;
    Caps c;
    c.max_ball = std::min(job.caps.max_ball, job.config_caps.max_ball);
    c.max_ilp_nodes = std::min(job.caps.max_ilp_nodes, job.config_caps.max_ilp_nodes);
    c.max_enumeration = std::min(job.caps.max_enumeration, job.config_caps.max_enumeration);
    return c;
}

// Timing is reproducibility noise; the deterministic report body carries zeros.
void scrub_timing(Json& j) {
    if (j.is_object()) {
        for (auto& [key, val] : j.items()) {
            if (key == "elapsed_ms")
                val = 0;
            else
                scrub_timing(val);
        }
    } else if (j.is_array()) {
        for (auto& v : j) scrub_timing(v);
    }
}

struct MapPairDocs {
    MapSpec forward;
    MapSpec backward;
};

MapPairDocs resolve_map_pair(const std::string& ref) {
    if (!fs::exists(ref)) {
        auto p = builtins::map_pair(ref);
        return {std::move(p.forward), std::move(p.backward)};
    }
    Json doc = documents::load_document(ref);
    if (!doc.is_object() || !doc.contains("forward") || !doc.contains("backward"))
        throw ValidationError("document '" + ref + "': expected forward and backward maps");
    MapSpec fwd = documents::parse_map(doc["forward"], ref);
    MapSpec bwd = documents::parse_map(doc["backward"], ref);
    if (bwd.source->name() != fwd.target->name() || bwd.target->name() != fwd.source->name())
        throw ValidationError("document '" + ref + "': maps do not form a matching pair");
    // share spec instances so the pair is recognized as such downstream
    bwd.source = fwd.target;
    bwd.target = fwd.source;
    return {std::move(fwd), std::move(bwd)};
}

struct EmbeddingDocs {
    MapSpec embedding;
    std::optional<MapSpec> retraction;
};

EmbeddingDocs resolve_embedding(const std::string& ref) {
    if (!fs::exists(ref)) {
        auto e = builtins::embedding(ref);
        return {std::move(e.embedding), std::move(e.retraction)};
    }
    Json doc = documents::load_document(ref);
    if (!doc.is_object() || !doc.contains("embedding"))
        throw ValidationError("document '" + ref + "': expected an embedding map");
    MapSpec emb = documents::parse_map(doc["embedding"], ref);
    std::optional<MapSpec> ret;
    if (doc.contains("retraction")) {
        ret = documents::parse_map(doc["retraction"], ref);
        if (ret->source->name() != emb.target->name() ||
            ret->target->name() != emb.source->name())
            throw ValidationError("document '" + ref + "': retraction endpoints mismatch");
        ret->source = emb.target;
        ret->target = emb.source;
    }
    return {std::move(emb), std::move(ret)};
}

MapSpec resolve_single_map(const std::string& ref) {
    if (fs::exists(ref)) {
        Json doc = documents::load_document(ref);
        if (doc.is_object() && doc.contains("embedding"))
            return documents::parse_map(doc["embedding"], ref);
        return documents::parse_map(doc, ref);
    }
    try {
        return builtins::map_pair(ref).forward;
    } catch (const ValidationError&) {
    }
    return builtins::embedding(ref).embedding;
}

GroupPtr resolve_presentation(const std::string& ref) {
    if (fs::exists(ref)) return documents::parse_presentation(documents::load_document(ref), ref);
    return builtins::group(ref);
}

Json compute(const JobSpec& job, std::string* csv) {
    Caps caps = effective_caps(job);
    RadiusPolicy policy{job.radius, job.radius + 1};
    CycleEnumOptions enum_opts;
    enum_opts.max_results = caps.max_enumeration;
    CycleEnumMode mode;
    if (job.mode == "exhaustive")
        mode = CycleEnumMode::Exhaustive;
    else if (job.mode == "circuits")
        mode = CycleEnumMode::Circuits;
    else
        throw ValidationError("unknown mode '" + job.mode + "'");

    if (job.task == "fill") {
        SpecPtr spec = documents::resolve_complex(job.complex_ref);
        auto w = ComplexWindow::instantiate(spec, job.radius, caps.max_ball);
        Chain target = chain_from_literal(w, job.dim, job.target);
        auto cert = fill_norm(make_filling_instance(target), caps.max_ilp_nodes);
        return documents::certificate_json(cert);
    }
    if (job.task == "fv") {
        SpecPtr spec = documents::resolve_complex(job.complex_ref);
        FVTable table =
            fv_table(spec, job.dim, job.max_k, mode, policy, caps.max_ilp_nodes, enum_opts);
        for (auto& r : table.rows) r.elapsed_ms = 0;  // keep the CSV body deterministic
        if (csv) *csv = documents::fv_table_csv(table);
        return documents::fv_table_json(table);
    }
    if (job.task == "operator-bound") {
        MapSpec m = resolve_single_map(job.map_ref);
        return documents::operator_bound_json(operator_bound(m, job.dim));
    }
    if (job.task == "equivalence") {
        auto pair = resolve_map_pair(job.map_ref);
        auto report = check_norm_equivalence(pair.forward, pair.backward, job.dim,
                                             job.samples, job.max_k, job.seed, policy,
                                             caps.max_ilp_nodes);
        return documents::equivalence_json(report);
    }
    if (job.task == "dehn-consistency") {
        SpecPtr spec = documents::resolve_complex(job.complex_ref);
        return documents::dehn_json(
            dehn_consistency(spec, job.max_k, policy, caps.max_ilp_nodes));
    }
    if (job.task == "subgroup-check") {
        auto e = resolve_embedding(job.map_ref);
        auto report = subgroup_inequality_check(e.embedding, job.dim, job.max_k, job.c_cap,
                                                policy, policy, job.max_k + 1,
                                                caps.max_ilp_nodes, e.retraction,
                                                job.samples, job.seed);
        return documents::subgroup_json(report);
    }
    if (job.task == "confluence") {
        GroupPtr g = resolve_presentation(job.complex_ref);
        return documents::confluence_json(g->verify_confluence(job.max_k), *g);
    }
    throw ValidationError("unknown task '" + job.task + "'");
}

}  // namespace

std::uint64_t content_hash(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

Caps load_caps(const std::string& config_path) {
    Caps caps;
    if (config_path.empty() || !fs::exists(config_path)) return caps;
    Json doc = documents::load_document(config_path);
    for (const auto& [key, val] : doc.items()) {
        if (key == "version")
            continue;
        else if (key == "max_ball")
            caps.max_ball = val.get<std::size_t>();
        else if (key == "max_ilp_nodes")
            caps.max_ilp_nodes = val.get<std::int64_t>();
        else if (key == "max_enumeration")
            caps.max_enumeration = val.get<std::size_t>();
        else
            throw ValidationError("config '" + config_path + "': unknown field '" + key + "'");
    }
    return caps;
}

std::string cache_key(const JobSpec& job) {
    Caps caps = effective_caps(job);
    std::ostringstream s;
    s << kArtifactVersion << '\n'
      << job.task << '\n'
      << ref_fingerprint(job.complex_ref) << '\n'
      << ref_fingerprint(job.map_ref) << '\n'
      << job.dim << ' ' << job.max_k << ' ' << job.radius << ' ' << job.mode << ' '
      << job.seed << ' ' << job.samples << ' ' << job.c_cap << ' ' << job.format << '\n'
      << caps.max_ball << ' ' << caps.max_ilp_nodes << ' ' << caps.max_enumeration << '\n';
    for (const auto& t : job.target) s << t.coef << '|' << t.orbit << '|' << t.word << ';';
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(content_hash(s.str())));
    return buf;
}

JobResult run_job(const JobSpec& job) {
    JobResult result;
    result.cache_key = cache_key(job);

    std::string out_dir = job.out_dir;
    if (out_dir.empty()) {
        const char* env = std::getenv("FILLNORM_OUT");
        out_dir = env && *env ? env : ".";
    }
    fs::create_directories(fs::path(out_dir) / ".cache");
    fs::path cache_file = fs::path(out_dir) / ".cache" / (result.cache_key + ".json");

    if (fs::exists(cache_file)) {
        Json cached = documents::load_document(cache_file.string());
        result.report = cached["report"];
        result.csv = cached.value("csv", "");
        result.from_cache = true;
    } else {
        result.report = compute(job, &result.csv);
        scrub_timing(result.report);
        Caps caps = effective_caps(job);
        result.report["caps"] = {{"max_ball", caps.max_ball},
                                 {"max_ilp_nodes", caps.max_ilp_nodes},
                                 {"max_enumeration", caps.max_enumeration}};
        Json entry{{"report", result.report}, {"csv", result.csv}};
        std::ofstream(cache_file) << entry.dump(2) << '\n';
    }

    fs::path out_file = fs::path(out_dir) / (job.task + "-" + result.cache_key +
                                             (job.format == "csv" ? ".csv" : ".json"));
    std::ofstream out(out_file);
    if (job.format == "csv") {
        if (result.csv.empty())
            throw ValidationError("task '" + job.task + "' has no CSV serialization");
        // deterministic body; run metadata stays on the header line
        out << "# task=" << job.task << " key=" << result.cache_key << " generated="
            << std::chrono::duration_cast<std::chrono::seconds>(
                   std::chrono::system_clock::now().time_since_epoch())
                   .count()
            << '\n'
            << result.csv;
    } else {
        out << result.report.dump(2) << '\n';
    }
    result.files_written.push_back(out_file.string());
    return result;
}

}  // namespace jobs
}  // namespace fillnorm
