/*
   Copyright 2026 The canon authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <CLI11.hpp>

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "canon/io.hpp"

namespace canon::cli {

namespace detail {

inline void render_jordan(std::ostream& out, const Matrix& input, const JordanReport& r) {
    out << "field: " << input.field().str() << "\n";
    out << "n: " << input.rows() << "\n";
    out << "blocks:\n";
    for (const GeneralizedJordanBlock& b : r.form.blocks)
        out << "  (" << b.prime.str() << ")^" << b.power << "\n";
    out << "form:\n" << r.form_matrix;
    out << "transform:\n" << r.transform;
}

inline void render_factorization(std::ostream& out, const PrimePowerFactorization& f) {
    out << "unit: " << f.unit.str() << "\n";
    for (const auto& [prime, power] : f.factors) out << "(" << prime.str() << ")^" << power << "\n";
}

inline void render_contra(std::ostream& out, const ContraPair& p, const ContraReport& r) {
    out << "field: " << p.field().str() << "\n";
    out << "m: " << p.m() << "\n";
    out << "n: " << p.n() << "\n";
    out << "blocks:\n";
    for (const ContraBlock& b : r.blocks) {
        out << "  " << contra_kind_name(b.kind) << " " << b.rows << "x" << b.cols;
        if (b.jordan_part) {
            out << ", jordan:";
            for (const GeneralizedJordanBlock& gb : b.jordan_part->blocks)
                out << " (" << gb.prime.str() << ")^" << gb.power;
        }
        out << "\n";
    }
    out << "canonical A:\n" << r.canonical_a;
    out << "canonical B:\n" << r.canonical_b;
    out << "S:\n" << r.s;
    out << "T:\n" << r.t;
}

}  // namespace detail

/// Runs one CLI invocation. Decision verbs exit 0 for YES and 1 for NO;
/// computations exit 0; every error is one diagnostic line and exit 2.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact canonical forms: generalized Jordan form over Q/GF(p) and "
                 "canonical pairs under contragredient equivalence",
                 "canon"};
    app.require_subcommand(1);

    std::string file1, file2, file3, file4, literal, field_text = "q";
    bool json = false;
    std::uint64_t seed = 0;
    int max_degree = 12;

    auto add_common = [&](CLI::App* sub) {
        sub->add_flag("--json", json, "emit a JSON report");
        sub->add_option("--seed", seed, "seed for the randomized factoring step");
        sub->add_option("--max-degree", max_degree, "degree cap for factoring over Q");
    };

    CLI::App* cmd_jordan = app.add_subcommand("jordan", "canonical form of a square matrix");
    cmd_jordan->add_option("matrix", file1, "matrix file")->required();
    add_common(cmd_jordan);

    CLI::App* cmd_minpoly = app.add_subcommand("minpoly", "minimal polynomial of a square matrix");
    cmd_minpoly->add_option("matrix", file1, "matrix file")->required();
    add_common(cmd_minpoly);

    CLI::App* cmd_factor = app.add_subcommand("factor", "prime-power factorization of a polynomial");
    cmd_factor->add_option("polynomial", literal, "polynomial, e.g. 'x^2 - 2/3x + 1' or 'poly: 1 0 1'")
        ->required();
    cmd_factor->add_option("--field", field_text, "coefficient field: q or gf<p>");
    add_common(cmd_factor);

    CLI::App* cmd_similar = app.add_subcommand("similar", "decide similarity of two square matrices");
    cmd_similar->add_option("a", file1, "first matrix file")->required();
    cmd_similar->add_option("b", file2, "second matrix file")->required();
    add_common(cmd_similar);

    CLI::App* cmd_contra = app.add_subcommand("contra", "canonical form of a pair (A, B)");
    cmd_contra->add_option("a", file1, "A matrix file (m x n)")->required();
    cmd_contra->add_option("b", file2, "B matrix file (n x m)")->required();
    add_common(cmd_contra);

    CLI::App* cmd_equiv =
        app.add_subcommand("contra-equiv", "decide contragredient equivalence of (A,B) and (C,D)");
    cmd_equiv->add_option("a", file1, "A matrix file")->required();
    cmd_equiv->add_option("b", file2, "B matrix file")->required();
    cmd_equiv->add_option("c", file3, "C matrix file")->required();
    cmd_equiv->add_option("d", file4, "D matrix file")->required();
    add_common(cmd_equiv);

    std::vector<std::string> full{"canon"};
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(full.size());
    for (const std::string& s : full) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        FactorOptions fo{seed, max_degree};
        if (app.got_subcommand(cmd_jordan)) {
            Matrix a = read_matrix_file(file1);
            JordanReport r = jordan_canonical(a, fo);
            if (json)
                out << jordan_report_json(a, r).dump(2) << "\n";
            else
                detail::render_jordan(out, a, r);
            return 0;
        }
        if (app.got_subcommand(cmd_minpoly)) {
            Matrix a = read_matrix_file(file1);
            Polynomial mp = minimal_polynomial(a);
            if (json)
                out << minpoly_json(a, mp).dump(2) << "\n";
            else
                out << mp.str() << "\n";
            return 0;
        }
        if (app.got_subcommand(cmd_factor)) {
            FieldSpec f = parse_field_spec(field_text);
            Polynomial p = Polynomial::parse(literal, f);
            PrimePowerFactorization r = factor(p, fo);
            if (json)
                out << factorization_json(p, r).dump(2) << "\n";
            else
                detail::render_factorization(out, r);
            return 0;
        }
        if (app.got_subcommand(cmd_similar)) {
            bool yes = is_similar(read_matrix_file(file1), read_matrix_file(file2), fo);
            if (json)
                out << Json{{"similar", yes}}.dump(2) << "\n";
            else
                out << (yes ? "YES" : "NO") << "\n";
            return yes ? 0 : 1;
        }
        if (app.got_subcommand(cmd_contra)) {
            ContraPair p(read_matrix_file(file1), read_matrix_file(file2));
            ContraReport r = contragredient_canonical(p, fo);
            if (json)
                out << contra_report_json(p, r).dump(2) << "\n";
            else
                detail::render_contra(out, p, r);
            return 0;
        }
        if (app.got_subcommand(cmd_equiv)) {
            ContraPair p(read_matrix_file(file1), read_matrix_file(file2));
            ContraPair q(read_matrix_file(file3), read_matrix_file(file4));
            bool yes = is_contra_equivalent(p, q, fo);
            if (json)
                out << Json{{"equivalent", yes}}.dump(2) << "\n";
            else
                out << (yes ? "YES" : "NO") << "\n";
            return yes ? 0 : 1;
        }
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand\n";
    return 2;
}

}  // namespace canon::cli
