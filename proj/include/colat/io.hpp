#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "colat/latgen.hpp"
#include "colat/linalg.hpp"

namespace colat {

struct parse_error : error {
    explicit parse_error(const std::string& what) : error(what) {}
};

inline std::string format_rat(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Token "p/q" or plain integer.
inline Rat parse_rat(const std::string& tok) {
    Rat q;
    if (mpq_set_str(q.get_mpq_t(), tok.c_str(), 10) != 0)
        throw parse_error("bad rational token '" + tok + "'");
    if (sgn(Rat(q.get_den())) <= 0) throw parse_error("bad rational token '" + tok + "'");
    q.canonicalize();
    return q;
}

inline Int parse_int(const std::string& tok) {
    Int z;
    if (mpz_set_str(z.get_mpz_t(), tok.c_str(), 10) != 0)
        throw parse_error("bad integer token '" + tok + "'");
    return z;
}

inline RatVec parse_rat_vec(const std::string& line) {
    std::istringstream ss(line);
    RatVec v;
    std::string tok;
    while (ss >> tok) v.push_back(parse_rat(tok));
    return v;
}

// Matrix text format: "n m" then n rows of m integers.
inline void write_matrix(std::ostream& os, const Basis& b) {
    os << b.rank() << ' ' << b.dim() << '\n';
    for (const auto& row : b.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j];
        os << '\n';
    }
}

inline Basis read_matrix(std::istream& is) {
    std::size_t n = 0, m = 0;
    if (!(is >> n >> m)) throw parse_error("matrix header: expected 'n m'");
    std::vector<IntVec> rows(n, IntVec(m));
    std::string tok;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if (!(is >> tok)) throw parse_error("matrix: unexpected end of input");
            rows[i][j] = parse_int(tok);
        }
    return Basis(std::move(rows));
}

// Instance files carry a one-line JSON header before the matrix.
inline void write_instance(std::ostream& os, const Instance& inst) {
    nlohmann::json hdr = {{"kind", kind_name(inst.kind)},
                          {"n", inst.n},
                          {"bits", inst.bits},
                          {"seed", inst.seed}};
    os << hdr.dump() << '\n';
    write_matrix(os, inst.basis);
}

inline Instance read_instance(std::istream& is) {
    Instance inst;
    while (is.peek() == '\n' || is.peek() == ' ') is.get();
    if (is.peek() == '{') {
        std::string line;
        std::getline(is, line);
        nlohmann::json hdr;
        try {
            hdr = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw parse_error(std::string("instance header: ") + e.what());
        }
        std::string kind = hdr.value("kind", "explicit");
        if (kind == "gm")
            inst.kind = InstanceKind::goldstein_mayer;
        else if (kind == "knapsack")
            inst.kind = InstanceKind::knapsack;
        else
            inst.kind = InstanceKind::explicit_basis;
        inst.n = hdr.value("n", 0u);
        inst.bits = hdr.value("bits", 0u);
        inst.seed = hdr.value("seed", std::uint64_t(0));
    }
    inst.basis = read_matrix(is);
    if (inst.n == 0) inst.n = unsigned(inst.basis.rank());
    return inst;
}

// One rational vector per line; blank lines skipped.  Parse failures carry
// 1-based line numbers.
inline std::vector<RatVec> read_targets(std::istream& is) {
    std::vector<RatVec> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(parse_rat_vec(line));
        } catch (const parse_error& e) {
            throw parse_error("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

inline void write_rat_vec(std::ostream& os, const RatVec& v) {
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << format_rat(v[i]);
    os << '\n';
}

}  // namespace colat
