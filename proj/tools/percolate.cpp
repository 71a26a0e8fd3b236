#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "perc/report.hpp"

using namespace perc;

namespace {

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (ch != ' ') {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Percolating subcategories of deflation-exact categories of quiver representations"};
    app.require_subcommand(1);
    bool as_json = false;
    RunOptions opts;
    int bound = -1, depth = -1;
    std::uint64_t seed = 0;
    app.add_flag("--json", as_json, "Emit the machine-readable report");
    auto* seed_opt = app.add_option("--seed", seed, "Seed for sampled quantifiers");
    app.add_option("--bound", bound, "Size bound N (number of summands)");
    app.add_option("--depth", depth, "Depth bound for weak isomorphism chains");
    app.add_flag("--op", opts.op, "Work in the opposite category");

    std::string spec, axioms, from, to, conflation, weak, demo;
    auto* check = app.add_subcommand("check", "Check exact-category and subcategory axioms");
    check->add_option("--spec", spec, "Spec file or builtin name")->required();
    check->add_option("--axioms", axioms, "Comma separated axiom ids");
    auto* classify = app.add_subcommand("classify", "Classify the subcategory");
    classify->add_option("--spec", spec, "Spec file or builtin name")->required();
    auto* lochom = app.add_subcommand("lochom", "Hom space in the quotient");
    lochom->add_option("--spec", spec, "Spec file or builtin name")->required();
    lochom->add_option("--from", from, "Source object, e.g. S3 or P2+2*S1")->required();
    lochom->add_option("--to", to, "Target object")->required();
    auto* k0 = app.add_subcommand("k0", "Grothendieck groups");
    k0->add_option("--spec", spec, "Spec file or builtin name")->required();
    auto* lift = app.add_subcommand("lift", "Lift a conflation along a weak isomorphism");
    lift->add_option("--spec", spec, "Spec file or builtin name")->required();
    lift->add_option("--conflation", conflation, "Generator name or #k for the k-th listed conflation")->required();
    lift->add_option("--weak", weak, "Source object of a weak isomorphism into the middle term")->required();
    auto* demo_cmd = app.add_subcommand("demo", "Run a worked example");
    demo_cmd->add_option("name", demo, "p3, p4, r3, serre or torsion")->required();
    auto* dot = app.add_subcommand("export-dot", "Hom graph of the indecomposables in DOT");
    dot->add_option("--spec", spec, "Spec file or builtin name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (bound > 0) opts.bound = bound;
    if (depth >= 0) opts.depth = depth;
    if (*seed_opt) opts.seed = seed;

    try {
        auto t0 = std::chrono::steady_clock::now();
        Report r;
        if (*demo_cmd) {
            r = run_demo(demo, opts);
        } else {
            auto inst = load_instance(spec, opts);
            const CategoryInstance& c = *inst;
            if (*dot) {
                std::cout << export_dot(c);
                return 0;
            }
            if (*check) r = run_check(c, split_list(axioms));
            else if (*classify) r = run_classify(c);
            else if (*lochom) r = run_lochom(c, from, to, c.depth);
            else if (*k0) r = run_k0(c);
            else r = run_lift(c, conflation, weak);
            r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
        if (as_json) std::cout << to_json(r).dump(2) << "\n";
        else std::cout << render_human(r);
        return r.ok() ? 0 : 1;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code == 1 ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
