#include "cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sortpm/design.hpp"
#include "sortpm/errors.hpp"
#include "sortpm/geometry.hpp"
#include "sortpm/kinematics.hpp"
#include "sortpm/params_io.hpp"
#include "sortpm/singularity.hpp"
#include "sortpm/topology.hpp"
#include "sortpm/workspace.hpp"

namespace sortpm::cli {

namespace {

using nlohmann::ordered_json;

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

double sig9(double v) { return std::strtod(num(v).c_str(), nullptr); }

// "a+bi" for complex entries, plain number otherwise.
std::string complex_str(double re, double im) {
    if (im == 0.0) return num(re);
    return num(re) + (im < 0.0 ? "-" : "+") + num(std::abs(im)) + "i";
}

constexpr const char* kLoopGrammar = R"txt(Loop notation:
  loop     := joint ( relation joint )*
  relation := "||" parallel axes | "^" perpendicular axes | "-" unspecified
  joint    := kind [index] ["*"] ["(" axis ")"]
  kind     := "P" prismatic | "R" revolute | "Pa" parallelogram (pi joint)
  axis     := "x" | "y" | "z" | nx,ny,nz
"*" marks an actuated joint. Missing axes are inferred: the first joint
defaults to y, "||" copies the previous axis, "^" takes the first of x, y, z
perpendicular to it, "-" leaves it unknown. Example:
  "P11*(y) || R12 || R13 || R14 ^ R23 || R22 ^ P21*")txt";

struct ParamsOptions {
    std::string file;
    std::string builtin;
};

void add_params_options(CLI::App* sub, ParamsOptions& opt) {
    auto* file = sub->add_option("--params", opt.file, "Geometry parameter JSON file");
    auto* builtin = sub->add_option("--builtin", opt.builtin,
                                    "Built-in geometry: 'paper' (verification dimensions) or "
                                    "'sized' (final robot dimensions)")
                        ->check(CLI::IsMember({"paper", "sized"}));
    file->excludes(builtin);
}

GeometryParams resolve_params(const ParamsOptions& opt, std::ostream& err) {
    GeometryParams p;
    if (!opt.builtin.empty()) {
        p = opt.builtin == "sized" ? GeometryParams::sized_set() : GeometryParams::verification_set();
    } else if (!opt.file.empty()) {
        const LoadedParams loaded = load_params_file(opt.file);
        for (const auto& w : loaded.warnings) err << "warning: " << w << '\n';
        p = loaded.params;
    } else {
        throw InputError("one of --params FILE or --builtin NAME is required");
    }
    const ValidationReport report = validate_params(p);
    if (report.has(Violation::NonPositiveLength)) {
        std::string msg = "invalid geometry:";
        for (const auto& v : report.violations) msg += "\n  " + v.message;
        throw InputError(msg);
    }
    for (const auto& v : report.violations) err << "warning: " << v.message << '\n';
    return p;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open output file " + path);
    out << content;
    if (content.empty() || content.back() != '\n') out << '\n';
}

std::vector<BranchSelector> selected_branches(const std::string& text) {
    if (text.empty()) {
        const auto all = BranchSelector::all();
        return {all.begin(), all.end()};
    }
    return {BranchSelector::parse(text)};
}

ordered_json solution_json(const KinematicSolution& s) {
    ordered_json j;
    j["branch"] = {s.branch.s1(), s.branch.s2(), s.branch.s3()};
    j["values"] = {sig9(s.values[0]), sig9(s.values[1]), sig9(s.values[2])};
    j["imag"] = {sig9(s.imag[0]), sig9(s.imag[1]), sig9(s.imag[2])};
    j["real"] = s.is_real;
    if (s.degenerate) j["degenerate"] = true;
    return j;
}

void print_solutions(std::ostream& out, const std::vector<KinematicSolution>& sols,
                     const char* branch_label, const char* columns) {
    out << "branch(" << branch_label << ")  " << columns << "  status\n";
    for (const auto& s : sols) {
        out << s.branch.str();
        for (int i = 0; i < 3; ++i) out << "  " << complex_str(s.values[i], s.imag[i]);
        out << "  " << (s.degenerate ? "degenerate" : (s.is_real ? "real" : "complex")) << '\n';
    }
}

void print_matrix(std::ostream& out, const char* name, const Eigen::Matrix3d& M) {
    out << name << " =\n";
    for (int i = 0; i < 3; ++i) {
        out << "  " << num(M(i, 0)) << "  " << num(M(i, 1)) << "  " << num(M(i, 2)) << '\n';
    }
}

ordered_json matrix_json(const Eigen::Matrix3d& M) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < 3; ++i) rows.push_back({sig9(M(i, 0)), sig9(M(i, 1)), sig9(M(i, 2))});
    return rows;
}

AxisRange parse_range(const std::string& text, const char* name) {
    AxisRange r;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &r.min, &r.max, &r.count, &tail) != 3) {
        throw InputError(std::string(name) + ": expected MIN:MAX:COUNT, got \"" + text + "\"");
    }
    return r;
}

struct JointArgs {
    double y1 = 0.0;
    double y2 = 0.0;
    double y3 = 0.0;
};

void add_joint_options(CLI::App* sub, JointArgs& q) {
    sub->add_option("--y1", q.y1, "Actuated slider 1 position, mm")->required();
    sub->add_option("--y2", q.y2, "Actuated slider 2 position, mm")->required();
    sub->add_option("--y3", q.y3, "Actuated slider 3 position, mm")->required();
}

// Real forward solution on the given assembly mode, shared by jacobian/singularity.
KinematicSolution real_configuration(const GeometryParams& p, const JointInput& q,
                                     const std::string& branch) {
    const KinematicSolution sol = fk_branch(p, q, BranchSelector::parse(branch));
    if (!sol.is_real) throw NotReal("assembly mode " + sol.branch.str() + " is not real for these inputs");
    return sol;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Kinematics and design analysis of the 2T1R sorting parallel mechanism", "sortpm"};
    app.require_subcommand(1, 1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    std::string output;
    ParamsOptions params_opt;
    JointArgs joints;
    std::string branch;

    // fk
    auto* fk = app.add_subcommand("fk", "Forward kinematics over the eight assembly modes (m,n,q)");
    add_params_options(fk, params_opt);
    add_joint_options(fk, joints);
    fk->add_option("--branch", branch, "Only this assembly mode, e.g. +1,+1,-1");
    fk->add_option("--output", output, "Also write a JSON report here");

    // ik
    PlatformPose pose;
    auto* ik = app.add_subcommand("ik", "Inverse kinematics over the eight working modes (u,v,w)");
    add_params_options(ik, params_opt);
    ik->add_option("--y", pose.y, "Platform point E, y coordinate, mm")->required();
    ik->add_option("--z", pose.z, "Platform point E, z coordinate, mm")->required();
    ik->add_option("--beta", pose.beta, "Platform rotation about y, rad")->required();
    ik->add_option("--branch", branch, "Only this working mode, e.g. +1,-1,-1");
    ik->add_option("--output", output, "Also write a JSON report here");

    // jacobian
    double fd_step = 0.0;
    auto* jac = app.add_subcommand("jacobian",
                                   "Parallel (A) and serial (B) Jacobians of a forward configuration");
    add_params_options(jac, params_opt);
    add_joint_options(jac, joints);
    jac->add_option("--branch", branch, "Assembly mode (m,n,q) of the configuration")->required();
    jac->add_option("--fd-step", fd_step, "Also difference the constraints with this step and compare");
    jac->add_option("--output", output, "Also write a JSON report here");

    // singularity
    double eps = kDefaultSingularEps;
    auto* sing = app.add_subcommand("singularity", "Classify a forward configuration as Regular, "
                                                   "Serial, Parallel or Both");
    add_params_options(sing, params_opt);
    add_joint_options(sing, joints);
    sing->add_option("--branch", branch, "Assembly mode (m,n,q) of the configuration")->required();
    sing->add_option("--eps", eps, "Relative tolerance on row-scaled diagonal factors")
        ->capture_default_str();
    sing->add_option("--output", output, "Also write a JSON report here");

    // workspace
    std::string r1, r2, r3, ry, rz;
    std::optional<double> slice_beta;
    unsigned threads = 0;
    auto* ws = app.add_subcommand(
        "workspace",
        "Sample the workspace. Joint grid (--y1-range/--y2-range/--y3-range with --branch m,n,q) or "
        "constant-orientation slice (--beta with --y-range/--z-range and --branch u,v,w). "
        "Ranges are MIN:MAX:COUNT. CSV columns: y1,y2,y3,y,z,beta,m,n,q,margin_serial,"
        "margin_parallel,leg1_margin");
    add_params_options(ws, params_opt);
    ws->add_option("--y1-range", r1, "Joint grid axis y1, MIN:MAX:COUNT");
    ws->add_option("--y2-range", r2, "Joint grid axis y2, MIN:MAX:COUNT");
    ws->add_option("--y3-range", r3, "Joint grid axis y3, MIN:MAX:COUNT");
    ws->add_option("--beta", slice_beta, "Fixed platform rotation for a slice, rad");
    ws->add_option("--y-range", ry, "Slice axis y, MIN:MAX:COUNT");
    ws->add_option("--z-range", rz, "Slice axis z, MIN:MAX:COUNT");
    ws->add_option("--branch", branch, "Assembly mode (grid) or working mode (slice)")->required();
    ws->add_option("--threads", threads, "Worker threads, 0 = hardware concurrency");
    ws->add_option("--output", output, "Write the CSV here instead of standard output");

    // topology
    std::string topo_builtin;
    std::vector<std::string> loops;
    std::string xi_text;
    auto* topo = app.add_subcommand("topology", "Mobility, constraint and coupling degrees");
    topo->add_option("--builtin", topo_builtin, "'paper': the sorting mechanism's two hybrid chains")
        ->check(CLI::IsMember({"paper"}));
    topo->add_option("--loop", loops, "Loop in compact notation (repeatable)");
    topo->add_option("--xi", xi_text, "Independent equation count per --loop, comma separated");
    topo->add_option("--output", output, "Also write a JSON report here");
    topo->footer(kLoopGrammar);

    // design
    DesignSpec spec;
    double sin_theta_min = 0.2;
    double tol = 0.05;
    auto* design = app.add_subcommand("design", "Leg clearance lengths and minimal coupler length l6");
    design->add_option("--a", spec.a, "Half rail spacing, mm")->capture_default_str();
    design->add_option("--clearance", spec.beta_clearance, "Leg clearance angle, rad")->capture_default_str();
    design->add_option("--sin-theta-min", sin_theta_min, "Lower bound on sin(theta) between EF and FC3")
        ->capture_default_str();
    design->add_option("--beta-min", spec.beta_min, "Lower tilt bound, rad")->capture_default_str();
    design->add_option("--beta-max", spec.beta_max, "Upper tilt bound, rad")->capture_default_str();
    design->add_option("--tol", tol, "Search tolerance, mm")->capture_default_str();
    design->add_option("--threads", threads, "Worker threads, 0 = hardware concurrency");
    design->add_option("--output", output, "Also write the JSON report here");

    std::vector<const char*> argv{"sortpm"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputInvalid;
    }

    try {
        if (fk->parsed()) {
            const GeometryParams p = resolve_params(params_opt, err);
            const JointInput q{joints.y1, joints.y2, joints.y3};
            std::vector<KinematicSolution> sols;
            if (branch.empty()) {
                const SolutionSet all = fk_enumerate(p, q);
                sols.assign(all.begin(), all.end());
            } else {
                sols.push_back(fk_branch(p, q, BranchSelector::parse(branch)));
            }
            out << "# forward kinematics y1=" << num(q.y1) << " y2=" << num(q.y2) << " y3=" << num(q.y3) << '\n';
            print_solutions(out, sols, "m,n,q", "y  z  beta");
            ordered_json doc;
            doc["inputs"] = {{"y1", q.y1}, {"y2", q.y2}, {"y3", q.y3}};
            doc["solutions"] = ordered_json::array();
            for (const auto& s : sols) doc["solutions"].push_back(solution_json(s));
            write_output(output, doc.dump(2));
        } else if (ik->parsed()) {
            const GeometryParams p = resolve_params(params_opt, err);
            std::vector<KinematicSolution> sols;
            for (const auto& b : selected_branches(branch)) sols.push_back(ik_branch(p, pose, b));
            out << "# inverse kinematics y=" << num(pose.y) << " z=" << num(pose.z)
                << " beta=" << num(pose.beta) << '\n';
            print_solutions(out, sols, "u,v,w", "y1  y2  y3");
            ordered_json doc;
            doc["inputs"] = {{"y", pose.y}, {"z", pose.z}, {"beta", pose.beta}};
            doc["solutions"] = ordered_json::array();
            for (const auto& s : sols) doc["solutions"].push_back(solution_json(s));
            write_output(output, doc.dump(2));
        } else if (jac->parsed()) {
            const GeometryParams p = resolve_params(params_opt, err);
            const JointInput q{joints.y1, joints.y2, joints.y3};
            const KinematicSolution sol = real_configuration(p, q, branch);
            const PlatformPose pz = sol.pose();
            const JacobianPair J = analytic_jacobians(p, pz, q, sol.branch.s2());
            out << "# pose y=" << num(pz.y) << " z=" << num(pz.z) << " beta=" << num(pz.beta) << '\n';
            print_matrix(out, "A", J.A);
            print_matrix(out, "B", J.B);
            ordered_json doc;
            doc["pose"] = {sig9(pz.y), sig9(pz.z), sig9(pz.beta)};
            doc["A"] = matrix_json(J.A);
            doc["B"] = matrix_json(J.B);
            if (fd_step > 0.0) {
                const JacobianPair F = fd_jacobians(p, pz, q, sol.branch.s2(), fd_step);
                const double dev = std::max((J.A - F.A).cwiseAbs().maxCoeff(), (J.B - F.B).cwiseAbs().maxCoeff());
                print_matrix(out, "A_fd", F.A);
                print_matrix(out, "B_fd", F.B);
                out << "max |analytic - fd| = " << num(dev) << '\n';
                doc["A_fd"] = matrix_json(F.A);
                doc["B_fd"] = matrix_json(F.B);
                doc["max_abs_deviation"] = sig9(dev);
            }
            write_output(output, doc.dump(2));
        } else if (sing->parsed()) {
            const GeometryParams p = resolve_params(params_opt, err);
            const JointInput q{joints.y1, joints.y2, joints.y3};
            const KinematicSolution sol = real_configuration(p, q, branch);
            const PlatformPose pz = sol.pose();
            const JacobianPair J = analytic_jacobians(p, pz, q, sol.branch.s2());
            const SingularityClass c = classify_configuration(J, eps);
            const FactorMargins m = normalized_factors(J);
            const double leg1 = leg1_alignment_margin(p, pz);
            out << "kind " << to_string(c.kind) << '\n'
                << "serial_cases " << c.serial_names() << '\n'
                << "parallel_cases " << c.parallel_names() << '\n'
                << "det_A " << num(c.det_A) << '\n'
                << "det_B " << num(c.det_B) << '\n'
                << "serial_margins " << num(m.serial[0]) << ' ' << num(m.serial[1]) << ' ' << num(m.serial[2]) << '\n'
                << "parallel_margins " << num(m.parallel[0]) << ' ' << num(m.parallel[1]) << ' ' << num(m.parallel[2]) << '\n'
                << "leg1_alignment_margin " << num(leg1) << '\n';
            ordered_json doc;
            doc["kind"] = to_string(c.kind);
            doc["serial_cases"] = c.serial_names();
            doc["parallel_cases"] = c.parallel_names();
            doc["det_A"] = sig9(c.det_A);
            doc["det_B"] = sig9(c.det_B);
            doc["leg1_alignment_margin"] = sig9(leg1);
            write_output(output, doc.dump(2));
        } else if (ws->parsed()) {
            const GeometryParams p = resolve_params(params_opt, err);
            WorkspaceCloud cloud;
            if (slice_beta) {
                if (ry.empty() || rz.empty()) throw InputError("slice needs --y-range and --z-range");
                cloud = constant_orientation_slice(p, parse_range(ry, "--y-range"), parse_range(rz, "--z-range"),
                                                   *slice_beta, BranchSelector::parse(branch), threads);
            } else {
                if (r1.empty() || r2.empty() || r3.empty()) {
                    throw InputError("joint grid needs --y1-range, --y2-range and --y3-range");
                }
                SampleGrid grid{{parse_range(r1, "--y1-range"), parse_range(r2, "--y2-range"),
                                 parse_range(r3, "--y3-range")}};
                cloud = sample_workspace(p, grid, BranchSelector::parse(branch), threads);
            }
            const std::string csv = to_csv(cloud);
            if (output.empty()) {
                out << csv;
            } else {
                write_output(output, csv);
                out << "records " << cloud.records.size() << '\n';
            }
        } else if (topo->parsed()) {
            ordered_json doc;
            if (!loops.empty()) {
                if (!topo_builtin.empty()) throw InputError("--builtin and --loop are exclusive");
                std::vector<LoopSpec> specs;
                for (const auto& l : loops) specs.push_back(parse_loop(l));
                std::vector<int> xi;
                std::stringstream in(xi_text);
                std::string item;
                while (std::getline(in, item, ',')) {
                    try {
                        xi.push_back(std::stoi(item));
                    } catch (const std::exception&) {
                        throw InputError("--xi: \"" + item + "\" is not an integer");
                    }
                }
                for (std::size_t j = 0; j < specs.size(); ++j) {
                    out << "loop" << (j + 1) << " " << specs[j].str() << "  f=" << specs[j].freedoms()
                        << " I=" << specs[j].actuated << '\n';
                }
                const MobilityResult m = mobility_analysis(specs, xi);
                out << "F=" << m.dof << '\n';
                doc["F"] = m.dof;
                doc["xi"] = m.xi;
                doc["delta"] = m.delta;
                doc["kappa"] = m.kappa;
                out << "kappa=" << m.kappa << '\n';
            } else {
                if (topo_builtin.empty()) throw InputError("topology needs --builtin paper or --loop");
                const SortingMechanismTopology t = sorting_mechanism_topology();
                const MobilityResult& m = t.mobility;
                for (std::size_t j = 0; j < t.loops.size(); ++j) {
                    out << "loop" << (j + 1) << " " << t.loops[j].str() << "  f=" << t.loops[j].freedoms()
                        << " I=" << t.loops[j].actuated << '\n';
                }
                out << "limb_a " << t.limb_a.describe() << '\n'
                    << "limb_b " << t.limb_b.describe() << '\n'
                    << "sub_pm " << t.sub_pm.describe() << '\n'
                    << "hybrid_chain1 " << t.hybrid_chain1.describe() << '\n'
                    << "hybrid_chain2 " << t.hybrid_chain2.describe() << '\n'
                    << "platform " << t.platform.describe() << '\n'
                    << "xi=(" << m.xi[0] << "," << m.xi[1] << ")\n"
                    << "F=" << m.dof << '\n'
                    << "delta=(" << m.delta[0] << "," << m.delta[1] << ")\n"
                    << "kappa=" << m.kappa << '\n'
                    << t.formula << '\n';
                doc["xi"] = m.xi;
                doc["F"] = m.dof;
                doc["delta"] = m.delta;
                doc["kappa"] = m.kappa;
                doc["platform"] = t.platform.describe();
                doc["formula"] = t.formula;
            }
            write_output(output, doc.dump(2));
        } else if (design->parsed()) {
            if (!(sin_theta_min >= 0.0 && sin_theta_min < 1.0)) {
                throw InputError("--sin-theta-min must lie in [0, 1)");
            }
            spec.theta_min = std::asin(sin_theta_min);
            const DesignReport report = design_report(spec, tol, threads);
            const std::string json = design_report_json(report, spec);
            out << json << '\n';
            write_output(output, json);
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputInvalid;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kDomainFailure;
    }
    return kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace sortpm::cli
