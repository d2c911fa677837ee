#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fillnorm/documents.hpp"

namespace fillnorm {
namespace jobs {

// Desk-scale guardrails. Defaults may be replaced from a config file; a job
// may lower them, and may only raise them with the explicit override flag.
struct Caps {
    std::size_t max_ball = 200000;
    std::int64_t max_ilp_nodes = 200000;
    std::size_t max_enumeration = 2000000;
};

Caps load_caps(const std::string& config_path);  // missing file -> defaults

struct JobSpec {
    std::string task;  // fill, fv, operator-bound, equivalence, dehn-consistency,
                       // subgroup-check, confluence
    std::string complex_ref;  // built-in name or document path
    std::string map_ref;      // map/pair/embedding reference where applicable
    std::vector<ChainLiteralTerm> target;  // fill task only
    int dim = 1;
    int max_k = 4;
    int radius = 4;
    std::string mode = "exhaustive";  // or "circuits"
    std::uint64_t seed = 1;
    int samples = 50;
    int c_cap = 10;
    std::string format = "json";  // or "csv"
    std::string out_dir;          // empty: FILLNORM_OUT env var, then "."
    Caps caps;
    bool cap_override = false;
    Caps config_caps;  // ceiling the job may not exceed without the override
};

struct JobResult {
    documents::Json report;
    std::string csv;  // filled for csv format
    std::string cache_key;
    bool from_cache = false;
    std::vector<std::string> files_written;
};

std::string cache_key(const JobSpec& job);

// Runs the task, writing report files and a cache entry under the output
// directory. A cache hit performs no solver work. Validation errors throw.
JobResult run_job(const JobSpec& job);

std::uint64_t content_hash(const std::string& data);

}  // namespace jobs
}  // namespace fillnorm
