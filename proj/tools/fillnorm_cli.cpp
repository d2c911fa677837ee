#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "fillnorm/jobs.hpp"

namespace {

using fillnorm::documents::Json;

int exit_code_for(fillnorm::Error::Category cat) {
    switch (cat) {
        case fillnorm::Error::Category::Validation: return 2;
        case fillnorm::Error::Category::ResourceLimit: return 3;
        case fillnorm::Error::Category::Internal: return 4;
    }
    return 4;
}

void add_common(CLI::App* cmd, fillnorm::jobs::JobSpec& job, std::string& config_path) {
    cmd->add_option("--dim", job.dim, "chain dimension n");
    cmd->add_option("--max-k", job.max_k, "largest cycle norm / length bound");
    cmd->add_option("--radius", job.radius, "window radius for enumeration");
    cmd->add_option("--mode", job.mode, "cycle enumeration mode: exhaustive|circuits");
    cmd->add_option("--out", job.out_dir, "output directory (default $FILLNORM_OUT or .)");
    cmd->add_option("--format", job.format, "report format: csv|json");
    cmd->add_option("--seed", job.seed, "sampling seed");
    cmd->add_option("--samples", job.samples, "sample count for map checks");
    cmd->add_option("--c-cap", job.c_cap, "largest constant tried in equivalence fits");
    cmd->add_option("--config", config_path, "caps config file");
    cmd->add_option("--max-ball", job.caps.max_ball, "ball size cap");
    cmd->add_option("--max-nodes", job.caps.max_ilp_nodes, "solver node cap");
    cmd->add_option("--max-enum", job.caps.max_enumeration, "cycle enumeration cap");
    cmd->add_flag("--cap-override", job.cap_override,
                  "allow caps above the configured ceiling");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact filling-norm and FV-table computations on finite windows of "
                 "equivariant cell complexes"};
    app.require_subcommand(1);

    fillnorm::jobs::JobSpec job;
    std::string config_path;
    std::string target_json;

    auto* fill = app.add_subcommand("fill", "minimum-l1 filling of one cycle");
    fill->add_option("--complex", job.complex_ref, "complex: built-in name or document path")
        ->required();
    fill->add_option("--target", target_json,
                     R"(cycle literal, e.g. [{"coef":2,"orbit":"e","element":""}])")
        ->required();
    add_common(fill, job, config_path);

    auto* fv = app.add_subcommand("fv", "FV table of a complex");
    fv->add_option("--complex", job.complex_ref, "complex: built-in name or document path")
        ->required();
    add_common(fv, job, config_path);

    auto* opb = app.add_subcommand("operator-bound", "l1 operator bound of a chain map");
    opb->add_option("--map", job.map_ref, "map: built-in name or document path")->required();
    add_common(opb, job, config_path);

    auto* eq = app.add_subcommand("equivalence",
                                  "two-sided filling-norm comparison along a map pair");
    eq->add_option("--map", job.map_ref, "map pair: built-in name or document path")
        ->required();
    add_common(eq, job, config_path);

    auto* dehn = app.add_subcommand("dehn-consistency",
                                    "FV vs circuit-decomposition bound on a 2-complex");
    dehn->add_option("--complex", job.complex_ref, "complex: built-in name or document path")
        ->required();
    add_common(dehn, job, config_path);

    auto* sub = app.add_subcommand("subgroup-check",
                                   "FV comparison along a subcomplex embedding");
    sub->add_option("--map", job.map_ref, "embedding: built-in name or document path")
        ->required();
    add_common(sub, job, config_path);

    auto* conf = app.add_subcommand("confluence", "exhaustive rewrite-confluence check");
    conf->add_option("--complex", job.complex_ref,
                     "presentation: built-in name or document path")
        ->required();
    add_common(conf, job, config_path);

    auto* lb = app.add_subcommand("list-builtins", "print the built-in catalog");
    std::string lb_format = "text";
    lb->add_option("--format", lb_format, "text|json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (lb->parsed()) {
        if (lb_format == "json") {
            Json arr = Json::array();
            for (const auto& e : fillnorm::builtins::catalog()) {
                Json entry{{"name", e.name}, {"kind", e.kind}, {"summary", e.summary}};
                if (e.top_dim >= 0) entry["top_dim"] = e.top_dim;
                arr.push_back(entry);
            }
            std::cout << arr.dump(2) << '\n';
        } else {
            for (const auto& e : fillnorm::builtins::catalog()) {
                std::cout << e.name << "  [" << e.kind;
                if (e.top_dim >= 0) std::cout << ", top_dim " << e.top_dim;
                std::cout << "]  " << e.summary << '\n';
            }
        }
        return 0;
    }

    job.task = app.get_subcommands().front()->get_name();
    try {
        job.config_caps = fillnorm::jobs::load_caps(config_path);
        if (!target_json.empty()) {
            Json t = Json::parse(target_json, nullptr, false);
            if (t.is_discarded() || !t.is_array())
                throw fillnorm::ValidationError("--target must be a JSON array of terms");
            for (const auto& term : t)
                job.target.push_back({term.at("coef").get<std::int64_t>(),
                                      term.at("orbit").get<std::string>(),
                                      term.value("element", "")});
        }
        auto result = fillnorm::jobs::run_job(job);
        std::cout << result.report.dump(2) << '\n';
        for (const auto& f : result.files_written)
            std::cerr << (result.from_cache ? "cached -> " : "wrote -> ") << f << '\n';
        return 0;
    } catch (const fillnorm::Error& e) {
        Json err{{"error", e.what()},
                 {"task", job.task},
                 {"exit_code", exit_code_for(e.category())}};
        std::cerr << err.dump(2) << '\n';
        return exit_code_for(e.category());
    } catch (const std::exception& e) {
        Json err{{"error", e.what()}, {"task", job.task}, {"exit_code", 4}};
        std::cerr << err.dump(2) << '\n';
        return 4;
    }
}
