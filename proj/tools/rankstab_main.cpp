#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rankstab/json_io.hpp"
#include "rankstab/sweep.hpp"
#include "rankstab/witness.hpp"

using namespace rankstab;

namespace {

Presentation load_presentation(const std::string& path) {
    return parse_presentation(read_text_file(path));
}

MatTuple load_tuple(const std::string& path) {
    return tuple_from_json(parse_json_text(read_text_file(path)));
}

mpq_class parse_eps(const std::string& text) {
    Scalar s = Scalar::parse(FieldSpec::rationals(), text);
    mpq_class q = s.rational();
    if (q <= 0) throw Error("eps must be positive");
    return q;
}

int thread_count() {
    const char* env = std::getenv("RANKSTAB_THREADS");
    if (!env) return 1;
    int t = std::atoi(env);
    return t < 1 ? 1 : t;
}

// group words like "a b a' b'" over the declared generator names; a trailing
// apostrophe marks the inverse
GroupWord parse_group_word(const std::string& text, const std::vector<std::string>& gens) {
    GroupWord word;
    std::istringstream ss(text);
    std::string tok;
    while (ss >> tok) {
        bool inv = !tok.empty() && tok.back() == '\'';
        std::string name = inv ? tok.substr(0, tok.size() - 1) : tok;
        auto it = std::find(gens.begin(), gens.end(), name);
        if (it == gens.end()) throw ParseError("unknown group generator: " + name);
        int idx = (int)(it - gens.begin()) + 1;
        word.push_back(inv ? -idx : idx);
    }
    if (word.empty()) throw ParseError("empty group word");
    return word;
}

std::vector<std::string> split_names(const std::string& text) {
    std::vector<std::string> names;
    std::string cur;
    for (char c : text + ",") {
        if (c == ',') {
            if (!cur.empty()) names.push_back(cur);
            cur.clear();
        } else if (!std::isspace((unsigned char)c)) {
            cur += c;
        }
    }
    return names;
}

void emit_outcome(const StabilizeOutcome& out) { std::cout << outcome_to_json(out).dump(2) << "\n"; }

struct StabilizeArgs {
    std::string pres_file, tuple_file;
    std::string strategy = "findim";
    long m = 2;
    std::string eps = "1/2";
    std::string ref_file;
    std::string pres_a_file, pres_b_file, ref_a_file, ref_b_file;
    std::string sol_a_file, sol_b_file, rep_a_file, rep_b_file;
    long g = 1, g2 = 1;
    int mdim = 2;
    std::string grp_gens;
    std::vector<std::string> grp_rels;
};

int run_stabilize(const StabilizeArgs& args) {
    Presentation pres = load_presentation(args.pres_file);
    MatTuple input = load_tuple(args.tuple_file);
    mpq_class eps = parse_eps(args.eps);

    auto require = [](bool cond, const std::string& msg) {
        if (!cond) throw Error(msg);
    };

    if (args.strategy == "findim") {
        require(!args.ref_file.empty(), "--ref is required for the findim strategy");
        MatTuple ref = load_tuple(args.ref_file);
        emit_outcome(stabilize_findim(pres, args.m, ref, input, eps));
    } else if (args.strategy == "zero-product") {
        require(input.arity() == 2, "zero-product expects a 2-tuple");
        ZeroProductResult z = stabilize_zero_product(input.mat(0), input.mat(1));
        MatTuple fixed(input.field(), input.n(), {z.b1, z.b2});
        emit_outcome(verify_outcome(pres, input, fixed, eps,
                                    {{"case", "zero-product"},
                                     {"moved_rank", std::to_string(z.moved_rank)}}));
    } else if (args.strategy == "direct-product") {
        require(!args.pres_a_file.empty() && !args.pres_b_file.empty(),
                "--pres-a/--pres-b are required for the direct-product strategy");
        require(!args.ref_a_file.empty() && !args.ref_b_file.empty(),
                "--ref-a/--ref-b are required for the direct-product strategy");
        Presentation pa = load_presentation(args.pres_a_file);
        Presentation pb = load_presentation(args.pres_b_file);
        ExactSolver sa = make_findim_solver(args.m, load_tuple(args.ref_a_file));
        ExactSolver sb = make_findim_solver(args.m, load_tuple(args.ref_b_file));
        StabilizeOutcome out = stabilize_direct_product(pa, pb, sa, sb, input, eps);
        if (defect(pres, out.solution).max_defect != 0)
            throw NotStabilizedError("solution violates the supplied presentation",
                                     out.diagnostics);
        emit_outcome(out);
    } else if (args.strategy == "matrix-algebra") {
        require(!args.pres_a_file.empty() && !args.ref_a_file.empty(),
                "--pres-a and --ref-a are required for the matrix-algebra strategy");
        Presentation pa = load_presentation(args.pres_a_file);
        ExactSolver sa = make_findim_solver(args.m, load_tuple(args.ref_a_file));
        StabilizeOutcome out = stabilize_matrix_algebra(pa, args.mdim, sa, input, eps);
        if (defect(pres, out.solution).max_defect != 0)
            throw NotStabilizedError("solution violates the supplied presentation",
                                     out.diagnostics);
        emit_outcome(out);
    } else if (args.strategy == "group-algebra") {
        require(!args.grp_gens.empty(), "--grp-gens is required for the group-algebra strategy");
        require(!args.ref_file.empty(), "--ref is required for the group-algebra strategy");
        std::vector<std::string> gens = split_names(args.grp_gens);
        std::vector<GroupWord> words;
        for (const std::string& w : args.grp_rels) words.push_back(parse_group_word(w, gens));
        Presentation fg = group_algebra_presentation(gens, words, input.field());
        ExactSolver solver = make_findim_solver(args.m, load_tuple(args.ref_file));
        StabilizeOutcome out = stabilize_group_algebra(fg, solver, input, eps);
        if (defect(pres, out.solution).max_defect != 0)
            throw NotStabilizedError("solution violates the supplied presentation",
                                     out.diagnostics);
        emit_outcome(out);
    } else if (args.strategy == "free-product") {
        require(!args.pres_a_file.empty() && !args.pres_b_file.empty(),
                "--pres-a/--pres-b are required for the free-product strategy");
        require(!args.sol_a_file.empty() && !args.sol_b_file.empty() &&
                    !args.rep_a_file.empty() && !args.rep_b_file.empty(),
                "--sol-a/--sol-b/--rep-a/--rep-b are required for the free-product strategy");
        Presentation pa = load_presentation(args.pres_a_file);
        Presentation pb = load_presentation(args.pres_b_file);
        MatTuple combined =
            stabilize_free_product(pa, pb, load_tuple(args.sol_a_file), load_tuple(args.sol_b_file),
                                   load_tuple(args.rep_a_file), load_tuple(args.rep_b_file), args.g,
                                   args.g2);
        StabilizeOutcome out;
        out.solution = combined;
        out.verified = true;
        out.diagnostics["case"] = "free-product";
        if (defect(pres, combined).max_defect != 0)
            throw NotStabilizedError("solution violates the supplied presentation",
                                     out.diagnostics);
        emit_outcome(out);
    } else {
        throw Error("unknown strategy: " + args.strategy);
    }
    return 0;
}

struct WitnessArgs {
    std::string family;
    long n = 2, k = 2, i = 2;
    std::string out_file;
    std::string tuple_file;
};

int run_witness(const WitnessArgs& args) {
    std::cout << "family,param,n,max_defect\n";
    if (args.family == "vacuous") {
        if (args.tuple_file.empty()) throw Error("witness vacuous requires --tuple");
        MatTuple t = load_tuple(args.tuple_file);
        VacuousVerdict v = vacuous_certify(t);
        std::cout << "vacuous,-," << t.n() << ","
                  << (v == VacuousVerdict::ImplicationHolds ? "ImplicationHolds"
                                                            : "NotApproximate")
                  << "\n";
        return 0;
    }
    WitnessFamily fam;
    long param = 0;
    std::string param_str;
    if (args.family == "weyl") {
        fam = weyl_family();
        param = args.n;
        param_str = std::to_string(param);
    } else if (args.family == "matsize") {
        fam = matrix_size_family((int)args.k);
        param = args.n;
        param_str = std::to_string(args.k) + ":" + std::to_string(args.n);
    } else if (args.family == "folner") {
        fam = folner_family();
        param = args.i;
        param_str = std::to_string(param);
    } else {
        throw Error("unknown witness family: " + args.family);
    }
    MatTuple t = fam.generator(param);
    DefectReport rep = defect(fam.presentation, t);
    std::cout << args.family << "," << param_str << "," << t.n() << ","
              << rep.max_defect.get_str() << "\n";
    if (!args.out_file.empty()) write_text_file(args.out_file, tuple_to_json(t).dump(2) + "\n");
    return 0;
}

std::pair<long, long> parse_range(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos) {
        long v = std::stol(text);
        return {v, v};
    }
    return {std::stol(text.substr(0, dots)), std::stol(text.substr(dots + 2))};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rankstab: exact rank-distance stability toolkit"};
    app.require_subcommand(1);
    app.set_config("--config");  // optional INI config; command-line flags win

    // parse
    std::string parse_file;
    CLI::App* cmd_parse =
        app.add_subcommand("parse", "parse a presentation and print its normal form");
    cmd_parse->add_option("presentation", parse_file)->required();

    // defect
    std::string defect_pres, defect_tuple;
    CLI::App* cmd_defect = app.add_subcommand("defect", "per-relator normalized ranks of a tuple");
    cmd_defect->add_option("presentation", defect_pres)->required();
    cmd_defect->add_option("tuple", defect_tuple)->required();

    // stabilize
    StabilizeArgs st;
    CLI::App* cmd_stab = app.add_subcommand("stabilize", "repair a tuple into an exact solution");
    cmd_stab->add_option("presentation", st.pres_file)->required();
    cmd_stab->add_option("tuple", st.tuple_file)->required();
    cmd_stab->add_option(
        "--strategy", st.strategy,
        "findim|zero-product|direct-product|matrix-algebra|group-algebra|free-product");
    cmd_stab->add_option("--m", st.m, "degree bound for findim-backed solvers");
    cmd_stab->add_option("--eps", st.eps, "target approximation level (exact rational)");
    cmd_stab->add_option("--ref", st.ref_file, "reference exact solution (findim/group-algebra)");
    cmd_stab->add_option("--pres-a", st.pres_a_file);
    cmd_stab->add_option("--pres-b", st.pres_b_file);
    cmd_stab->add_option("--ref-a", st.ref_a_file);
    cmd_stab->add_option("--ref-b", st.ref_b_file);
    cmd_stab->add_option("--sol-a", st.sol_a_file);
    cmd_stab->add_option("--sol-b", st.sol_b_file);
    cmd_stab->add_option("--rep-a", st.rep_a_file);
    cmd_stab->add_option("--rep-b", st.rep_b_file);
    cmd_stab->add_option("--g", st.g, "representation-size modulus of the left factor");
    cmd_stab->add_option("--g2", st.g2, "representation-size modulus of the right factor");
    cmd_stab->add_option("--mdim", st.mdim, "matrix-algebra degree m");
    cmd_stab->add_option("--grp-gens", st.grp_gens, "comma-separated group generator names");
    cmd_stab->add_option("--grp-rel", st.grp_rels,
                         "group relator word, e.g. \"a b a' b'\" (repeatable)");

    // witness
    WitnessArgs wa;
    CLI::App* cmd_wit = app.add_subcommand("witness", "generate instability witness tuples");
    cmd_wit->add_option("family", wa.family, "weyl|matsize|folner|vacuous")->required();
    cmd_wit->add_option("--n", wa.n);
    cmd_wit->add_option("--k", wa.k);
    cmd_wit->add_option("--i", wa.i);
    cmd_wit->add_option("--out", wa.out_file, "write the tuple JSON here");
    cmd_wit->add_option("--tuple", wa.tuple_file, "tuple to certify (vacuous family)");

    // sweep
    std::string sweep_pres, sweep_ref, sweep_sizes = "0..0", sweep_eps = "1/2";
    int sweep_noise = 1, sweep_trials = 1;
    long sweep_m = 2;
    std::uint64_t sweep_seed = 0;
    CLI::App* cmd_sweep = app.add_subcommand("sweep", "seeded perturb-and-repair experiment (CSV)");
    cmd_sweep->add_option("presentation", sweep_pres)->required();
    cmd_sweep->add_option("--ref", sweep_ref)->required();
    cmd_sweep->add_option("--sizes", sweep_sizes, "size range a..b (multiples of the ref size run)");
    cmd_sweep->add_option("--noise-rank", sweep_noise);
    cmd_sweep->add_option("--trials", sweep_trials);
    cmd_sweep->add_option("--seed", sweep_seed);
    cmd_sweep->add_option("--m", sweep_m);
    cmd_sweep->add_option("--eps", sweep_eps);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_parse->parsed()) {
            std::cout << load_presentation(parse_file).pretty();
            return 0;
        }
        if (cmd_defect->parsed()) {
            Presentation p = load_presentation(defect_pres);
            MatTuple t = load_tuple(defect_tuple);
            std::cout << defect_report_to_json(defect(p, t)).dump(2) << "\n";
            return 0;
        }
        if (cmd_stab->parsed()) return run_stabilize(st);
        if (cmd_wit->parsed()) return run_witness(wa);
        if (cmd_sweep->parsed()) {
            SweepSpec spec;
            spec.pres = load_presentation(sweep_pres);
            spec.ref = load_tuple(sweep_ref);
            std::tie(spec.size_lo, spec.size_hi) = parse_range(sweep_sizes);
            spec.noise_rank = sweep_noise;
            spec.trials = sweep_trials;
            spec.seed = sweep_seed;
            spec.m_degree = sweep_m;
            spec.eps = parse_eps(sweep_eps);
            std::cout << sweep_csv(spec, thread_count());
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const FieldMismatchError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const NotStabilizedError& e) {
        std::cerr << "not stabilized: " << e.what() << "\n";
        for (const auto& [k, v] : e.diagnostics()) std::cerr << "  " << k << ": " << v << "\n";
        return 4;
    } catch (const DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return 5;
    } catch (const ImpossibleInputError& e) {
        std::cerr << "impossible input: " << e.what() << "\n";
        return 5;
    } catch (const DimensionArithmeticError& e) {
        std::cerr << "dimension arithmetic: " << e.what() << "\n";
        return 5;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
