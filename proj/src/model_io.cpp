// Copyright 2026 The psdrec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "psdrec/model_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include "psdrec/error.hpp"

namespace psdrec {

namespace {

std::string fmt(double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void write_header(std::ostream &out, const char *kind, int d, int u, int i, int z, Field field) {
    out << "PSDREC v1 | kind=" << kind << " | D=" << d << " | U=" << u << " | I=" << i << " | Z=" << z
        << " | field=" << field_name(field) << '\n';
}

void write_matrix(std::ostream &out, const HermitianMatrix &a, Field field) {
    for (Index r = 0; r < a.dim(); ++r) {
        for (Index c = 0; c < a.dim(); ++c) {
            out << ' ' << fmt(a(r, c).real());
            if (field == Field::Complex) {
                out << ',' << fmt(a(r, c).imag());
            }
        }
    }
    out << '\n';
}

void write_vector(std::ostream &out, const RVector &v) {
    for (Index j = 0; j < v.size(); ++j) {
        out << ' ' << fmt(v[j]);
    }
    out << '\n';
}

double parse_real(std::string_view tok, std::size_t line) {
    double x = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError("bad real '" + std::string(tok) + "'", line);
    }
    return x;
}

int parse_int(std::string_view tok, std::size_t line) {
    int x = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError("bad integer '" + std::string(tok) + "'", line);
    }
    return x;
}

struct Header {
    std::string kind;
    int d = 0, u = 0, i = 0, z = 0;
    Field field = Field::Complex;
};

Header parse_header(const std::string &line) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream ss(line);
    while (std::getline(ss, part, '|')) {
        auto b = part.find_first_not_of(' ');
        auto e = part.find_last_not_of(' ');
        parts.push_back(b == std::string::npos ? "" : part.substr(b, e - b + 1));
    }
    if (parts.size() != 7 || parts[0] != "PSDREC v1") {
        throw ParseError("expected 'PSDREC v1 | kind=... | D=... | U=... | I=... | Z=... | field=...'", 1);
    }
    std::map<std::string, std::string> kv;
    for (std::size_t k = 1; k < parts.size(); ++k) {
        auto eq = parts[k].find('=');
        if (eq == std::string::npos) {
            throw ParseError("header field '" + parts[k] + "' is not key=value", 1);
        }
        kv[parts[k].substr(0, eq)] = parts[k].substr(eq + 1);
    }
    Header h;
    try {
        h.kind = kv.at("kind");
        h.d = parse_int(kv.at("D"), 1);
        h.u = parse_int(kv.at("U"), 1);
        h.i = parse_int(kv.at("I"), 1);
        h.z = parse_int(kv.at("Z"), 1);
        h.field = parse_field(kv.at("field"));
    } catch (const std::out_of_range &) {
        throw ParseError("header is missing a field", 1);
    } catch (const InvalidInput &e) {
        throw ParseError(e.what(), 1);
    }
    if (h.kind != "quantum" && h.kind != "nnm") {
        throw ParseError("unknown model kind '" + h.kind + "'", 1);
    }
    if (h.d < 1 || h.u < 0 || h.i < 0 || h.z < 1) {
        throw ParseError("header sizes out of range", 1);
    }
    return h;
}

std::vector<std::string_view> tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t p = 0;
    while (p < line.size()) {
        while (p < line.size() && line[p] == ' ') {
            ++p;
        }
        std::size_t q = p;
        while (q < line.size() && line[q] != ' ') {
            ++q;
        }
        if (q > p) {
            out.push_back(line.substr(p, q - p));
        }
        p = q;
    }
    return out;
}

HermitianMatrix parse_matrix(std::span<const std::string_view> toks, int d, Field field, std::size_t line) {
    if (toks.size() != static_cast<std::size_t>(d) * static_cast<std::size_t>(d)) {
        throw ParseError("expected " + std::to_string(d * d) + " matrix entries", line);
    }
    CMatrix m(d, d);
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
            std::string_view t = toks[static_cast<std::size_t>(r * d + c)];
            if (field == Field::Complex) {
                auto comma = t.find(',');
                if (comma == std::string_view::npos) {
                    throw ParseError("complex entry must be 're,im'", line);
                }
                m(r, c) = Complex(parse_real(t.substr(0, comma), line), parse_real(t.substr(comma + 1), line));
            } else {
                m(r, c) = parse_real(t, line);
            }
        }
    }
    try {
        return HermitianMatrix(std::move(m));
    } catch (const InvalidInput &e) {
        throw ParseError(e.what(), line);
    }
}

RVector parse_vector(std::span<const std::string_view> toks, int d, std::size_t line) {
    if (toks.size() != static_cast<std::size_t>(d)) {
        throw ParseError("expected " + std::to_string(d) + " vector entries", line);
    }
    RVector v(d);
    for (int j = 0; j < d; ++j) {
        v[j] = parse_real(toks[static_cast<std::size_t>(j)], line);
    }
    return v;
}

}  // namespace

void write_model(std::ostream &out, const QuantumModel &m) {
    write_header(out, "quantum", m.dim(), m.num_users(), m.num_items(), m.outcomes(), m.field());
    for (int u = 0; u < m.num_users(); ++u) {
        out << "user " << u;
        write_matrix(out, m.user(u), m.field());
    }
    for (int i = 0; i < m.num_items(); ++i) {
        for (int z = 0; z < m.outcomes(); ++z) {
            out << "item " << i << ' ' << z;
            write_matrix(out, m.effect(i, z), m.field());
        }
    }
}

void write_model(std::ostream &out, const NnmModel &m) {
    write_header(out, "nnm", m.dim(), m.num_users(), m.num_items(), m.outcomes(), Field::Real);
    for (int u = 0; u < m.num_users(); ++u) {
        out << "user " << u;
        write_vector(out, m.user(u).vec());
    }
    for (int i = 0; i < m.num_items(); ++i) {
        for (int z = 0; z < m.outcomes(); ++z) {
            out << "item " << i << ' ' << z;
            write_vector(out, m.effect(i, z));
        }
    }
}

AnyModel read_model(std::istream &in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("empty model file");
    }
    const Header h = parse_header(line);
    const bool quantum = h.kind == "quantum";

    std::vector<HermitianMatrix> q_users(static_cast<std::size_t>(h.u));
    std::vector<std::vector<HermitianMatrix>> q_items(static_cast<std::size_t>(h.i),
                                                      std::vector<HermitianMatrix>(static_cast<std::size_t>(h.z)));
    std::vector<RVector> n_users(static_cast<std::size_t>(h.u));
    std::vector<std::vector<RVector>> n_items(static_cast<std::size_t>(h.i),
                                              std::vector<RVector>(static_cast<std::size_t>(h.z)));
    std::vector<char> seen_user(static_cast<std::size_t>(h.u), 0);
    std::vector<char> seen_item(static_cast<std::size_t>(h.i) * static_cast<std::size_t>(h.z), 0);

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        auto toks = tokens(line);
        std::span<const std::string_view> all(toks);
        if (toks[0] == "user" && toks.size() >= 2) {
            int u = parse_int(toks[1], line_no);
            if (u < 0 || u >= h.u || seen_user[static_cast<std::size_t>(u)]) {
                throw ParseError("user index out of range or repeated", line_no);
            }
            seen_user[static_cast<std::size_t>(u)] = 1;
            if (quantum) {
                q_users[static_cast<std::size_t>(u)] = parse_matrix(all.subspan(2), h.d, h.field, line_no);
            } else {
                n_users[static_cast<std::size_t>(u)] = parse_vector(all.subspan(2), h.d, line_no);
            }
        } else if (toks[0] == "item" && toks.size() >= 3) {
            int i = parse_int(toks[1], line_no);
            int z = parse_int(toks[2], line_no);
            std::size_t slot = static_cast<std::size_t>(i) * static_cast<std::size_t>(h.z) + static_cast<std::size_t>(z);
            if (i < 0 || i >= h.i || z < 0 || z >= h.z || seen_item[slot]) {
                throw ParseError("item record out of range or repeated", line_no);
            }
            seen_item[slot] = 1;
            if (quantum) {
                q_items[static_cast<std::size_t>(i)][static_cast<std::size_t>(z)] =
                    parse_matrix(all.subspan(3), h.d, h.field, line_no);
            } else {
                n_items[static_cast<std::size_t>(i)][static_cast<std::size_t>(z)] =
                    parse_vector(all.subspan(3), h.d, line_no);
            }
        } else {
            throw ParseError("expected a 'user' or 'item' record", line_no);
        }
    }
    for (char s : seen_user) {
        if (!s) {
            throw ParseError("model file is missing user records");
        }
    }
    for (char s : seen_item) {
        if (!s) {
            throw ParseError("model file is missing item records");
        }
    }
    try {
        if (quantum) {
            return QuantumModel(h.d, h.z, h.field, std::move(q_users), std::move(q_items));
        }
        std::vector<ProbabilityVector> users;
        users.reserve(n_users.size());
        for (auto &p : n_users) {
            users.emplace_back(std::move(p));
        }
        return NnmModel(h.d, h.z, std::move(users), std::move(n_items));
    } catch (const InvalidInput &e) {
        throw ParseError(std::string("model violates its constraints: ") + e.what());
    }
}

void save_model(const std::string &path, const AnyModel &m) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write '" + path + "'");
    }
    std::visit([&](const auto &model) { write_model(out, model); }, m);
    if (!out) {
        throw IoError("error while writing '" + path + "'");
    }
}

AnyModel load_model(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    return read_model(in);
}

}  // namespace psdrec
