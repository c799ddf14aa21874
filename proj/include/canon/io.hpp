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

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "canon/contra.hpp"
#include "canon/factor.hpp"
#include "canon/jordan.hpp"

namespace canon {

using Json = nlohmann::ordered_json;

/// Accepts "q", "gf <p>", "gf<p>" or "gf:<p>".
inline FieldSpec parse_field_spec(const std::string& text) {
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '\t') s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (s == "q") return FieldSpec::rationals();
    if (s.rfind("gf", 0) == 0) {
        std::string rest = s.substr(2);
        if (!rest.empty() && rest[0] == ':') rest = rest.substr(1);
        if (!rest.empty() && rest.find_first_not_of("0123456789") == std::string::npos)
            return FieldSpec::gf(std::stoll(rest));
    }
    fail(errc::parse_error, "unknown field '" + text + "' (expected q or gf <p>)");
}

// -----------------------------------------------------------------------
// Matrix text format:
//   line 1: `field q` or `field gf <p>`
//   line 2: `<rows> <cols>`
//   then one line of whitespace-separated scalars per row
// `#` starts a comment line; blank lines are ignored.
// -----------------------------------------------------------------------

inline Matrix read_matrix(std::istream& in, const std::string& name = "<stream>") {
    int lineno = 0;
    auto bad = [&](int at, const std::string& msg) -> void {
        fail(errc::parse_error, name + ":" + std::to_string(at) + ": " + msg);
    };
    auto next_tokens = [&](std::vector<std::string>& out, int& at) {
        std::string line;
        while (std::getline(in, line)) {
            ++lineno;
            std::istringstream ls(line);
            std::string tok;
            out.clear();
            while (ls >> tok) {
                if (tok[0] == '#') break;
                out.push_back(tok);
            }
            if (!out.empty()) {
                at = lineno;
                return true;
            }
        }
        return false;
    };

    std::vector<std::string> toks;
    int at = 0;
    if (!next_tokens(toks, at)) bad(lineno, "missing field line");
    if (toks[0] != "field") bad(at, "expected 'field q' or 'field gf <p>'");
    std::string spec;
    for (std::size_t i = 1; i < toks.size(); ++i) spec += (i > 1 ? " " : "") + toks[i];
    FieldSpec field = FieldSpec::rationals();
    try {
        field = parse_field_spec(spec);
    } catch (const error& e) {
        bad(at, e.what());
    }

    if (!next_tokens(toks, at)) bad(lineno, "missing dimensions line");
    if (toks.size() != 2 || toks[0].find_first_not_of("0123456789") != std::string::npos ||
        toks[1].find_first_not_of("0123456789") != std::string::npos)
        bad(at, "expected '<rows> <cols>'");
    int rows = std::stoi(toks[0]);
    int cols = std::stoi(toks[1]);

    Matrix m(field, rows, cols);
    if (cols > 0) {
        for (int i = 0; i < rows; ++i) {
            if (!next_tokens(toks, at)) bad(lineno, "missing row " + std::to_string(i + 1));
            if (static_cast<int>(toks.size()) != cols)
                bad(at, "row " + std::to_string(i + 1) + " has " + std::to_string(toks.size()) +
                            " entries, expected " + std::to_string(cols));
            for (int j = 0; j < cols; ++j) {
                try {
                    m.at(i, j) = Scalar::parse(toks[static_cast<std::size_t>(j)], field);
                } catch (const error& e) {
                    bad(at, e.what());
                }
            }
        }
    }
    if (next_tokens(toks, at)) bad(at, "unexpected trailing content");
    return m;
}

inline Matrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::parse_error, "cannot open '" + path + "'");
    return read_matrix(in, path);
}

inline void write_matrix(std::ostream& out, const Matrix& m) {
    out << "field " << m.field().str() << "\n";
    out << m.rows() << " " << m.cols() << "\n";
    if (m.cols() > 0)
        for (int i = 0; i < m.rows(); ++i) {
            for (int j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m.at(i, j).str();
            out << "\n";
        }
}

inline std::string matrix_to_string(const Matrix& m) {
    std::ostringstream os;
    write_matrix(os, m);
    return os.str();
}

// -----------------------------------------------------------------------
// JSON reports. Scalars are serialized as strings so exact rationals
// survive the boundary; key order is fixed by insertion.
// -----------------------------------------------------------------------

inline Json matrix_entries_json(const Matrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json poly_coeffs_json(const Polynomial& p) {
    Json cs = Json::array();
    for (const Scalar& c : p.coeffs()) cs.push_back(c.str());
    return cs;
}

inline Json jordan_report_json(const Matrix& input, const JordanReport& r) {
    Json j;
    j["field"] = input.field().str();
    j["n"] = input.rows();
    Json blocks = Json::array();
    for (const GeneralizedJordanBlock& b : r.form.blocks) {
        Json jb;
        jb["prime"] = poly_coeffs_json(b.prime);
        jb["power"] = b.power;
        blocks.push_back(std::move(jb));
    }
    j["blocks"] = std::move(blocks);
    j["form"] = matrix_entries_json(r.form_matrix);
    j["transform"] = matrix_entries_json(r.transform);
    return j;
}

inline Json minpoly_json(const Matrix& input, const Polynomial& mp) {
    Json j;
    j["field"] = input.field().str();
    j["n"] = input.rows();
    j["minpoly"] = poly_coeffs_json(mp);
    return j;
}

inline Json factorization_json(const Polynomial& input, const PrimePowerFactorization& f) {
    Json j;
    j["field"] = input.field().str();
    j["input"] = input.str();
    j["unit"] = f.unit.str();
    Json factors = Json::array();
    for (const auto& [prime, power] : f.factors) {
        Json jf;
        jf["prime"] = poly_coeffs_json(prime);
        jf["power"] = power;
        factors.push_back(std::move(jf));
    }
    j["factors"] = std::move(factors);
    return j;
}

inline Json rank_profile_json(const RankProfile& rp) {
    Json j;
    j["t"] = rp.t;
    j["a_chain"] = rp.a_chain;
    j["b_chain"] = rp.b_chain;
    return j;
}

inline Json contra_report_json(const ContraPair& p, const ContraReport& r) {
    Json j;
    j["m"] = p.m();
    j["n"] = p.n();
    j["field"] = p.field().str();
    Json blocks = Json::array();
    for (const ContraBlock& b : r.blocks) {
        Json jb;
        jb["kind"] = contra_kind_name(b.kind);
        jb["m_i"] = b.rows;
        jb["n_i"] = b.cols;
        if (b.jordan_part) {
            Json inner = Json::array();
            for (const GeneralizedJordanBlock& gb : b.jordan_part->blocks) {
                Json jgb;
                jgb["prime"] = poly_coeffs_json(gb.prime);
                jgb["power"] = gb.power;
                inner.push_back(std::move(jgb));
            }
            jb["jordan"] = std::move(inner);
        }
        blocks.push_back(std::move(jb));
    }
    j["blocks"] = std::move(blocks);
    j["canonical_A"] = matrix_entries_json(r.canonical_a);
    j["canonical_B"] = matrix_entries_json(r.canonical_b);
    j["S"] = matrix_entries_json(r.s);
    j["T"] = matrix_entries_json(r.t);
    j["rank_profile"] = rank_profile_json(rank_profile(p));
    return j;
}

}  // namespace canon
