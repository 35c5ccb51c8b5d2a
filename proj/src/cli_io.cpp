#include "causal/cli.hpp"

#include "causal/error.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string_view>

namespace causal::cli {

namespace {

struct Token
{
    std::string_view text;
    std::size_t column;  // 1-based
};

[[noreturn]] void fail_at(const std::string& name, std::size_t line, std::size_t column, const std::string& what)
{
    std::ostringstream os;
    os << name << ":" << line << ":" << column << ": " << what;
    throw Error(os.str());
}

std::vector<Token> split(std::string_view line, std::string_view separators)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && separators.find(line[i]) != std::string_view::npos) ++i;
        if (i >= line.size()) break;
        const std::size_t start = i;
        while (i < line.size() && separators.find(line[i]) == std::string_view::npos) ++i;
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

std::string_view trim(std::string_view s, std::size_t* offset = nullptr)
{
    std::size_t a = 0, b = s.size();
    while (a < b && (s[a] == ' ' || s[a] == '\t')) ++a;
    while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t')) --b;
    if (offset) *offset += a;
    return s.substr(a, b - a);
}

// Drops a trailing '\r' and anything from '#' on.
std::string_view strip_comment(const std::string& raw)
{
    std::string_view line(raw);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    return line;
}

double parse_number(const Token& tok, const std::string& name, std::size_t line)
{
    std::string_view s = tok.text;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        fail_at(name, line, tok.column, "cannot read '" + std::string(tok.text) + "' as a number");
    return v;
}

bool first_data_line_has_equals(std::istream& in)
{
    std::string raw;
    while (std::getline(in, raw)) {
        const auto line = trim(strip_comment(raw));
        if (!line.empty()) return line.find('=') != std::string_view::npos;
    }
    return false;
}

}  // namespace

RefractiveIndexTable IndexColumns::table(bool gain) const
{
    if (!has_re || !has_im) {
        std::ostringstream os;
        os << "index table " << source << " lacks the " << (has_re ? "n_imag" : "n_real")
           << " column; this command needs both parts of n";
        throw Error(os.str());
    }
    RefractiveIndexTable t;
    t.omega = omega;
    t.n.resize(omega.size());
    for (std::size_t k = 0; k < omega.size(); ++k) t.n[k] = complex(re[k], im[k]);
    t.source = source;
    t.gain = gain;
    t.validate();
    return t;
}

IndexColumns read_index_table(std::istream& in, const std::string& name)
{
    IndexColumns cols;
    cols.source = name;
    std::vector<std::size_t> lines;
    std::vector<std::size_t> re_col, im_col;
    std::string raw;
    std::size_t ln = 0;
    while (std::getline(in, raw)) {
        ++ln;
        const auto line = strip_comment(raw);
        const auto tokens = split(line, " \t,");
        if (tokens.empty()) continue;
        if (tokens.size() != 3) {
            const std::size_t col = tokens.size() > 3 ? tokens[3].column : line.size() + 1;
            fail_at(name, ln, col,
                    "expected 3 columns (omega n_real n_imag), found " + std::to_string(tokens.size()));
        }
        const double w = parse_number(tokens[0], name, ln);
        const double nr = parse_number(tokens[1], name, ln);
        const double ni = parse_number(tokens[2], name, ln);
        if (!std::isfinite(w) || w < 0.0) fail_at(name, ln, tokens[0].column, "omega must be finite and >= 0");
        if (!cols.omega.empty() && !(w > cols.omega.back())) {
            std::ostringstream os;
            os << "omega must be strictly increasing (previous row has omega = " << cols.omega.back() << ")";
            fail_at(name, ln, tokens[0].column, os.str());
        }
        if (std::isinf(nr)) fail_at(name, ln, tokens[1].column, "n_real is infinite");
        if (std::isinf(ni)) fail_at(name, ln, tokens[2].column, "n_imag is infinite");
        cols.omega.push_back(w);
        cols.re.push_back(nr);
        cols.im.push_back(ni);
        lines.push_back(ln);
        re_col.push_back(tokens[1].column);
        im_col.push_back(tokens[2].column);
    }
    if (cols.omega.size() < 2) {
        std::ostringstream os;
        os << name << ": need at least 2 data rows, found " << cols.omega.size();
        throw Error(os.str());
    }

    auto check_column = [&](const std::vector<double>& v, const std::vector<std::size_t>& at, const char* label) {
        std::size_t missing = 0;
        for (double x : v) missing += std::isnan(x) ? 1 : 0;
        if (missing == v.size()) return false;
        if (missing > 0) {
            for (std::size_t k = 0; k < v.size(); ++k)
                if (std::isnan(v[k]))
                    fail_at(name, lines[k], at[k],
                            std::string(label) + " mixes numbers and nan; use nan for the whole column to mark it absent");
        }
        return true;
    };
    cols.has_re = check_column(cols.re, re_col, "n_real");
    cols.has_im = check_column(cols.im, im_col, "n_imag");
    if (!cols.has_re && !cols.has_im) throw Error(name + ": both n columns are nan");
    return cols;
}

IndexColumns read_index_table(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error("cannot open index table '" + path + "'");
    return read_index_table(in, path);
}

LorentzMedium read_medium(std::istream& in, const std::string& name)
{
    LorentzMedium m;
    bool have_plasma = false;
    std::string raw;
    std::size_t ln = 0;
    while (std::getline(in, raw)) {
        ++ln;
        const auto line = strip_comment(raw);
        std::size_t key_col = 0;
        const auto body = trim(line, &key_col);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) fail_at(name, ln, key_col + 1, "expected 'key = value'");
        const auto key = trim(body.substr(0, eq));
        std::size_t value_col = key_col + eq + 1;
        const auto value = trim(body.substr(eq + 1), &value_col);
        if (value.empty()) fail_at(name, ln, value_col + 1, "missing value");

        auto tokens = split(value, ",");
        for (auto& t : tokens) {
            std::size_t shift = 0;
            t.text = trim(t.text, &shift);
            t.column += value_col + shift;
        }
        if (key == "resonance") {
            if (tokens.size() != 3)
                fail_at(name, ln, value_col + 1,
                        "resonance needs omega,gamma,f (found " + std::to_string(tokens.size()) + " values)");
            Resonance r{parse_number(tokens[0], name, ln), parse_number(tokens[1], name, ln),
                        parse_number(tokens[2], name, ln)};
            if (!(r.omega >= 0.0) || !std::isfinite(r.omega))
                fail_at(name, ln, tokens[0].column, "resonance omega must be finite and >= 0");
            if (!(r.gamma > 0.0) || !std::isfinite(r.gamma))
                fail_at(name, ln, tokens[1].column, "damping gamma must be > 0");
            if (!(r.strength >= 0.0) || !std::isfinite(r.strength))
                fail_at(name, ln, tokens[2].column, "oscillator strength must be finite and >= 0");
            m.resonances.push_back(r);
        } else if (key == "plasma_omega_sq") {
            if (have_plasma) fail_at(name, ln, key_col + 1, "plasma_omega_sq given twice");
            if (tokens.size() != 1) fail_at(name, ln, value_col + 1, "plasma_omega_sq takes one value");
            m.plasma_omega_sq = parse_number(tokens[0], name, ln);
            if (!(m.plasma_omega_sq >= 0.0) || !std::isfinite(m.plasma_omega_sq))
                fail_at(name, ln, tokens[0].column, "plasma_omega_sq must be finite and >= 0");
            have_plasma = true;
        } else {
            fail_at(name, ln, key_col + 1,
                    "unknown key '" + std::string(key) + "' (expected resonance or plasma_omega_sq)");
        }
    }
    if (!have_plasma) throw Error(name + ": plasma_omega_sq is required");
    return m;
}

LorentzMedium parse_inline_medium(const std::string& spec)
{
    std::string text = spec;
    for (char& ch : text)
        if (ch == ';') ch = '\n';
    std::istringstream in(text);
    return read_medium(in, "inline medium");
}

Medium load_medium(const std::string& spec, bool gain_table)
{
    std::error_code ec;
    if (std::filesystem::is_regular_file(spec, ec)) {
        std::ifstream probe(spec);
        if (!probe) throw Error("cannot open medium file '" + spec + "'");
        const bool key_value = first_data_line_has_equals(probe);
        std::ifstream in(spec);
        if (key_value) return read_medium(in, spec);
        return read_index_table(in, spec).table(gain_table);
    }
    if (spec.find('=') != std::string::npos) return parse_inline_medium(spec);
    throw Error("medium '" + spec + "' is neither a readable file nor an inline 'key = value' spec");
}

ScharnhorstResult scharnhorst_ratio(double length, double wavelength, double k, double alpha)
{
    if (!(length > 0.0) || !std::isfinite(length)) throw Error("scharnhorst: plate separation L must be > 0");
    if (!(wavelength > 0.0) || !std::isfinite(wavelength)) throw Error("scharnhorst: wavelength must be > 0");
    if (!(k > 0.0) || !(alpha > 0.0)) throw Error("scharnhorst: k and alpha must be > 0");
    ScharnhorstResult r;
    const double ka2 = k * alpha * alpha;
    const double x = length / wavelength;
    r.coefficient_exact = 1.0 / ka2;
    r.ratio_exact = r.coefficient_exact * x * x * x;
    r.ratio_quoted = r.coefficient_quoted * x * x * x;
    r.delta_c_over_c = ka2 / (x * x * x * x);
    return r;
}

}  // namespace causal::cli
