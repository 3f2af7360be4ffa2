#include "piseries/catalog.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "piseries/constants.hpp"

namespace piseries::detail {
extern const char* embedded_catalog_text;
}

namespace piseries {

BigRat Identity::weight(long k) const {
    return w2 * BigRat(k) * BigRat(k) + w1 * BigRat(k) + w0;
}

const Identity* Catalog::find(const std::string& code) const {
    for (const auto& id : identities)
        if (id.code == code) return &id;
    return nullptr;
}

const Identity& Catalog::at(const std::string& code) const {
    const Identity* p = find(code);
    if (!p) throw std::out_of_range("unknown identity code: " + code);
    return *p;
}

BigRat term_value(const Identity& id, long k) {
    if (k < id.start) throw std::domain_error("term_value: k below start index");
    BigRat t = id.weight(k);
    for (const auto& kern : id.kernels) t *= kernel_term(kern, k);
    t *= pow_rat(id.base, -k);
    if (id.kpow) t /= pow_rat(BigRat(k), id.kpow);
    return t;
}

Ball rhs_value(const RHSExpr& rhs, int digits) {
    if (digits < 1) throw std::domain_error("rhs_value: digits < 1");
    int work = digits + 10;
    mpfr_prec_t p = prec_for_digits(work);
    Ball acc(p);
    for (const auto& t : rhs.terms) {
        Ball s = (t.rad == 1) ? Ball::from_si(1, p) : sqrt_ball(BigRat(t.rad), work);
        acc = acc.add(s.mul_q(t.coeff));
    }
    switch (rhs.base) {
        case BaseConst::InvPi:   return acc.div(const_pi(work));
        case BaseConst::PiSq:    return acc.mul(const_pi(work).pow_ui(2));
        case BaseConst::InvPiSq: return acc.div(const_pi(work).pow_ui(2));
        case BaseConst::Zeta3:   return acc.mul(const_zeta3(work));
        case BaseConst::KL2:     return acc.mul(const_K(work));
    }
    throw std::logic_error("rhs_value: bad base");
}

// ---------- text format ----------

namespace {

const char* base_token(BaseConst b) {
    switch (b) {
        case BaseConst::InvPi:   return "1/pi";
        case BaseConst::PiSq:    return "pi^2";
        case BaseConst::InvPiSq: return "1/pi^2";
        case BaseConst::Zeta3:   return "zeta3";
        case BaseConst::KL2:     return "K";
    }
    return "?";
}

BaseConst parse_base_const(const std::string& s, const std::string& code) {
    if (s == "1/pi") return BaseConst::InvPi;
    if (s == "pi^2") return BaseConst::PiSq;
    if (s == "1/pi^2") return BaseConst::InvPiSq;
    if (s == "zeta3") return BaseConst::Zeta3;
    if (s == "K") return BaseConst::KL2;
    throw std::invalid_argument("catalog [" + code + "]: unknown base constant " + s);
}

RHSExpr parse_rhs(const std::string& line, const std::string& code) {
    RHSExpr r;
    std::istringstream is(line);
    std::string base;
    is >> base;
    r.base = parse_base_const(base, code);
    std::string rest;
    std::getline(is, rest);
    // terms separated by " + "
    size_t pos = 0;
    while (pos < rest.size()) {
        size_t next = rest.find(" + ", pos);
        std::string term = rest.substr(pos, next == std::string::npos ? next : next - pos);
        pos = (next == std::string::npos) ? rest.size() : next + 3;
        // trim
        size_t a = term.find_first_not_of(' ');
        if (a == std::string::npos) continue;
        term = term.substr(a, term.find_last_not_of(' ') - a + 1);
        RhsTerm t;
        auto sq = term.find("*sqrt(");
        if (sq == std::string::npos) {
            t.coeff = parse_rat(term);
            t.rad = 1;
        } else {
            t.coeff = parse_rat(term.substr(0, sq));
            t.rad = std::stoul(term.substr(sq + 6, term.size() - sq - 7));
        }
        r.terms.push_back(t);
    }
    if (r.terms.empty())
        throw std::invalid_argument("catalog [" + code + "]: empty rhs");
    return r;
}

std::string rhs_to_string(const RHSExpr& r) {
    std::string s = base_token(r.base);
    for (size_t i = 0; i < r.terms.size(); ++i) {
        s += (i == 0) ? " " : " + ";
        s += r.terms[i].coeff.get_str();
        if (r.terms[i].rad != 1) s += "*sqrt(" + std::to_string(r.terms[i].rad) + ")";
    }
    return s;
}

const char* status_token(Status s) {
    switch (s) {
        case Status::Conjectural: return "conjectural";
        case Status::Proved:      return "proved";
        case Status::Corrected:   return "corrected";
    }
    return "?";
}

}  // namespace

std::string RHSExpr::str() const { return rhs_to_string(*this); }

Catalog parse_catalog(const std::string& text) {
    Catalog cat;
    std::istringstream in(text);
    std::string line;
    Identity cur;
    bool in_record = false;
    bool saw_version = false;
    std::set<std::string> codes;
    int lineno = 0;

    auto fail = [&](const std::string& msg) {
        std::string where = in_record ? " [" + cur.code + "]" : "";
        throw std::invalid_argument("catalog parse error at line " + std::to_string(lineno) +
                                    where + ": " + msg);
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        std::string rest;
        std::getline(ls, rest);
        if (!rest.empty() && rest[0] == ' ') rest = rest.substr(1);

        if (key == "version") {
            cat.version = std::stoi(rest);
            if (cat.version != 1) fail("unsupported schema version " + rest);
            saw_version = true;
            continue;
        }
        if (key == "id") {
            if (in_record) fail("missing end before new id");
            if (rest.empty()) fail("empty id");
            cur = Identity{};
            cur.code = rest;
            in_record = true;
            continue;
        }
        if (!in_record) fail("field outside record: " + key);

        if (key == "status") {
            if (rest == "conjectural") cur.status = Status::Conjectural;
            else if (rest == "proved") cur.status = Status::Proved;
            else if (rest == "corrected") cur.status = Status::Corrected;
            else fail("bad status " + rest);
        } else if (key == "start") {
            cur.start = std::stoi(rest);
        } else if (key == "weight") {
            std::istringstream ws(rest);
            std::vector<std::string> parts;
            std::string p;
            while (ws >> p) parts.push_back(p);
            if (parts.size() == 2) {
                cur.w2 = 0;
                cur.w1 = parse_rat(parts[0]);
                cur.w0 = parse_rat(parts[1]);
            } else if (parts.size() == 3) {
                cur.w2 = parse_rat(parts[0]);
                cur.w1 = parse_rat(parts[1]);
                cur.w0 = parse_rat(parts[2]);
            } else fail("weight needs 2 or 3 coefficients");
        } else if (key == "kpow") {
            cur.kpow = std::stoi(rest);
            if (cur.kpow < 0) fail("kpow < 0");
        } else if (key == "base") {
            cur.base = parse_rat(rest);
            if (cur.base == 0) fail("base must be nonzero");
        } else if (key == "kernel") {
            cur.kernels = parse_kernel_product(rest);
        } else if (key == "rhs") {
            cur.rhs = parse_rhs(rest, cur.code);
        } else if (key == "alt-rhs") {
            cur.alt_rhs = parse_rhs(rest, cur.code);
        } else if (key == "ratio") {
            cur.ratio = QuadSurd::parse(rest);
        } else if (key == "ratio-corrected") {
            cur.ratio_corrected = QuadSurd::parse(rest);
        } else if (key == "note") {
            cur.note = rest;
        } else if (key == "end") {
            if (cur.kernels.empty()) fail("record without kernel");
            if (cur.rhs.terms.empty()) fail("record without rhs");
            if (cur.kpow > 0 && cur.start < 1) fail("kpow > 0 requires start >= 1");
            if (!codes.insert(cur.code).second) fail("duplicate code " + cur.code);
            cat.identities.push_back(cur);
            in_record = false;
        } else {
            fail("unknown key " + key);
        }
    }
    if (in_record) throw std::invalid_argument("catalog parse error: unterminated record [" + cur.code + "]");
    if (!saw_version) throw std::invalid_argument("catalog parse error: missing version line");
    if (cat.identities.empty()) throw std::invalid_argument("catalog parse error: no identities");
    return cat;
}

std::string serialize_identity(const Identity& id) {
    std::ostringstream os;
    os << "id " << id.code << "\n";
    os << "status " << status_token(id.status) << "\n";
    if (id.start != 0) os << "start " << id.start << "\n";
    os << "weight ";
    if (id.w2 != 0) os << id.w2.get_str() << " ";
    os << id.w1.get_str() << " " << id.w0.get_str() << "\n";
    if (id.kpow) os << "kpow " << id.kpow << "\n";
    os << "base " << id.base.get_str() << "\n";
    os << "kernel " << kernel_product_str(id.kernels) << "\n";
    os << "rhs " << rhs_to_string(id.rhs) << "\n";
    if (id.alt_rhs) os << "alt-rhs " << rhs_to_string(*id.alt_rhs) << "\n";
    if (id.ratio) os << "ratio " << id.ratio->str() << "\n";
    if (id.ratio_corrected) os << "ratio-corrected " << id.ratio_corrected->str() << "\n";
    if (!id.note.empty()) os << "note " << id.note << "\n";
    os << "end\n";
    return os.str();
}

std::string serialize_catalog(const Catalog& c) {
    std::ostringstream os;
    os << "# catalog of series for 1/pi, pi^2, 1/pi^2, zeta(3) and K = L(2, chi_3)\n";
    os << "# summand at index k:  (w2 k^2 + w1 k + w0) / k^kpow * PROD kernels(k) / base^k\n";
    os << "version " << c.version << "\n";
    for (const auto& id : c.identities) os << "\n" << serialize_identity(id);
    return os.str();
}

Catalog load_catalog(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open catalog file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_catalog(ss.str());
}

const Catalog& builtin_catalog() {
    static const Catalog cat = parse_catalog(detail::embedded_catalog_text);
    return cat;
}

Catalog load_catalog_or_builtin(const std::string& path_override) {
    if (!path_override.empty()) return load_catalog(path_override);
    if (const char* env = std::getenv("PISERIES_CATALOG"); env && *env)
        return load_catalog(env);
    return builtin_catalog();
}

}  // namespace piseries
