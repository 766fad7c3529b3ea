// Command-line surface: validation, closures, profiles, group actions,
// TI/pseudo-TI verdicts, automorphisms, schurity and the generators.
// Exit codes: 0 success or positive verdict, 1 negative verdict,
// 2 error (bad input, violated axioms, unmet hypotheses).

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ccfg/actions.hpp"
#include "ccfg/constructions.hpp"
#include "ccfg/generators.hpp"
#include "ccfg/invariants.hpp"
#include "ccfg/io.hpp"
#include "ccfg/matching.hpp"
#include "ccfg/schurity.hpp"

namespace {

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream f(path);
    if (!f) throw ccfg::parse_error("cannot open " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

ccfg::Configuration load_scheme(const std::string& path, bool hanaki) {
    std::istringstream in(slurp(path));
    return ccfg::validate(ccfg::read_matrix(in, hanaki));
}

ccfg::PermGroup load_group(const std::string& path) {
    std::istringstream in(slurp(path));
    return ccfg::read_group(in);
}

const char* yesno(bool b) { return b ? "true" : "false"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coherent configuration toolkit"};
    app.require_subcommand(1);

    std::string file, file2;
    bool hanaki = false;
    int point = 0;

    auto* c_validate = app.add_subcommand("validate", "check the axioms of a scheme file");
    c_validate->add_option("file", file)->required();
    c_validate->add_flag("--hanaki", hanaki, "accept 1-based external tables");

    auto* c_closure = app.add_subcommand("closure", "coherent closure of a coloring");
    c_closure->add_option("file", file)->required();
    c_closure->add_flag("--hanaki", hanaki);

    auto* c_extend = app.add_subcommand("extend", "point extension");
    c_extend->add_option("file", file)->required();
    c_extend->add_option("--point", point)->required();

    auto* c_profile = app.add_subcommand("profile", "scheme statistics");
    c_profile->add_option("file", file)->required();
    c_profile->add_flag("--hanaki", hanaki);

    auto* c_orbitals = app.add_subcommand("orbitals", "orbital scheme of a group file");
    c_orbitals->add_option("file", file)->required();

    auto* c_ti = app.add_subcommand("ti", "TI verdict for a transitive group");
    c_ti->add_option("file", file)->required();

    auto* c_pti = app.add_subcommand("pseudo-ti", "pseudo-TI verdict for a scheme");
    c_pti->add_option("file", file)->required();
    c_pti->add_flag("--hanaki", hanaki);

    auto* c_aut = app.add_subcommand("aut", "automorphism group of a scheme");
    c_aut->add_option("file", file)->required();
    c_aut->add_flag("--hanaki", hanaki);

    auto* c_schur = app.add_subcommand("schurian", "schurity verdict");
    c_schur->add_option("file", file)->required();
    c_schur->add_flag("--hanaki", hanaki);

    auto* c_sep = app.add_subcommand("separable", "separability over a candidate scheme");
    c_sep->add_option("file", file)->required();
    c_sep->add_option("candidate", file2)->required();

    auto* c_match = app.add_subcommand("matching", "matching configuration at a point");
    c_match->add_option("file", file)->required();
    c_match->add_option("--point", point)->required();

    auto* c_pipe = app.add_subcommand("pipeline", "decomposition pipeline schurity verdict");
    c_pipe->add_option("file", file)->required();

    auto* c_gen = app.add_subcommand("gen", "example generators");
    c_gen->require_subcommand(1);
    int gp = 0, gk = 0, gn = 0, ga = 0;
    bool emit_group = false;
    auto* g_cyc = c_gen->add_subcommand("cyclotomic", "cyclotomic scheme on GF(p)");
    g_cyc->add_option("p", gp)->required();
    g_cyc->add_option("k", gk)->required();
    auto* g_sd = c_gen->add_subcommand("cyclic", "group <x+1, ax> on Z_n");
    g_sd->add_option("n", gn)->required();
    g_sd->add_option("p", gp)->required();
    g_sd->add_option("a", ga)->required();
    auto* g_288 = c_gen->add_subcommand("example288", "the 72-point quasi-thin scheme");
    g_288->add_flag("--group", emit_group, "emit the degree-72 group instead of the scheme");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*c_validate) {
            ccfg::Configuration cc = load_scheme(file, hanaki);
            std::cout << "valid=true\nn=" << cc.n() << "\nrank=" << cc.rank()
                      << "\nhomogeneous=" << yesno(cc.homogeneous) << "\n";
            return 0;
        }
        if (*c_closure) {
            std::istringstream in(slurp(file));
            ccfg::RefinementTrace tr;
            ccfg::Configuration cc = ccfg::closure_of_matrix(ccfg::read_matrix(in, hanaki), &tr);
            std::cerr << "iterations=" << tr.iterations << " initial_rank=" << tr.initial_rank
                      << " final_rank=" << tr.final_rank << "\n";
            ccfg::write_matrix(std::cout, cc.matrix);
            return 0;
        }
        if (*c_extend) {
            ccfg::Configuration cc = load_scheme(file, false);
            ccfg::write_matrix(std::cout, ccfg::point_extension(cc, {point}).matrix);
            return 0;
        }
        if (*c_profile) {
            std::cout << ccfg::to_text(ccfg::profile(load_scheme(file, hanaki)));
            return 0;
        }
        if (*c_orbitals) {
            ccfg::write_matrix(std::cout, ccfg::orbitals(load_group(file)).matrix);
            return 0;
        }
        if (*c_ti) {
            ccfg::TiSchemeVerdict v = ccfg::ti_scheme_check(load_group(file));
            std::cout << "ti=" << yesno(v.ti) << "\ntwo_valenced=" << yesno(v.two_valenced)
                      << "\nsemiregular=" << yesno(v.semiregular) << "\nk=" << v.k << "\n";
            return v.ti ? 0 : 1;
        }
        if (*c_pti) {
            ccfg::SchemeProfile p = ccfg::profile(load_scheme(file, hanaki));
            std::cout << ccfg::to_text(p);
            return p.pseudo_ti ? 0 : 1;
        }
        if (*c_aut) {
            ccfg::AutResult a = ccfg::automorphism_group(load_scheme(file, hanaki));
            std::cout << "order=" << a.order << "\n";
            ccfg::write_group(std::cout, a.group);
            return 0;
        }
        if (*c_schur) {
            bool s = ccfg::is_schurian(load_scheme(file, hanaki));
            std::cout << "schurian=" << yesno(s) << "\n";
            return s ? 0 : 1;
        }
        if (*c_sep) {
            ccfg::Configuration a = load_scheme(file, false);
            ccfg::Configuration b = load_scheme(file2, false);
            ccfg::SeparabilityVerdict v = ccfg::is_separable_small(a, {&b});
            std::cout << "separable_over_candidates=" << yesno(v.separable_over_candidates)
                      << "\nisomorphisms_checked=" << v.isomorphisms_checked << "\n";
            return v.separable_over_candidates ? 0 : 1;
        }
        if (*c_match) {
            ccfg::Configuration cc = load_scheme(file, false);
            ccfg::ExtractReport rep = ccfg::extract_M_alpha(cc, point);
            std::cout << "valid=" << yesno(rep.valid);
            if (!rep.valid) std::cout << "\nreason=" << rep.reason;
            std::cout << "\nfibers=" << rep.mc.nx() << "\n";
            if (rep.valid) {
                std::cout << "saturated=" << yesno(ccfg::saturation_check(rep.mc)) << "\n";
                for (int x = 0; x < rep.mc.nx(); ++x) {
                    std::cout << "fiber " << x << ":";
                    for (int pnt : rep.mc.fibers[x]) std::cout << " " << pnt;
                    std::cout << "\n";
                }
                for (int x = 0; x < rep.mc.nx(); ++x)
                    for (int y = 0; y < rep.mc.nx(); ++y)
                        for (const ccfg::Matching& m : rep.mc.block[x][y]) {
                            std::cout << "block " << x << " " << y << ":";
                            for (int v : m.img) std::cout << " " << v;
                            std::cout << "\n";
                        }
            }
            return rep.valid ? 0 : 1;
        }
        if (*c_pipe) {
            ccfg::PipelineVerdict v = ccfg::schurity_pipeline(load_scheme(file, false));
            std::cout << "schurian=" << yesno(v.schurian) << "\ngenerators=" << v.generators.size()
                      << "\ngroup_order=" << v.group_order << "\n";
            return v.schurian ? 0 : 1;
        }
        if (*g_cyc) {
            ccfg::write_matrix(std::cout, ccfg::gen_cyclotomic(gp, gk).matrix);
            return 0;
        }
        if (*g_sd) {
            ccfg::write_group(std::cout, ccfg::gen_cyclic_semidirect(gn, gp, ga));
            return 0;
        }
        if (*g_288) {
            ccfg::Example288 ex = ccfg::gen_example_288();
            if (emit_group)
                ccfg::write_group(std::cout, ex.action);
            else
                ccfg::write_matrix(std::cout, ex.scheme.matrix);
            return 0;
        }
    } catch (const ccfg::error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "no subcommand\n";
    return 2;
}
