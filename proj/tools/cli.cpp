#include "cli.hpp"

#include "cyclelift/errors.hpp"
#include "cyclelift/shintani.hpp"

#include "CLI11.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace cyclelift::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::uint64_t fnv1a(const std::string& text)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

fs::path SeriesCache::file_for(const std::string& key) const
{
    std::ostringstream name;
    name << std::hex << std::setw(16) << std::setfill('0') << fnv1a(key) << ".json";
    return *dir_ / name.str();
}

std::optional<QSeries> SeriesCache::load(const std::string& key) const
{
    if (!dir_) return std::nullopt;
    std::ifstream in(file_for(key));
    if (!in) return std::nullopt;
    try {
        json j = json::parse(in);
        if (j.at("key").get<std::string>() != key) return std::nullopt;
        return series_from_json(j.at("series"));
    } catch (const std::exception&) {
        return std::nullopt;  // unreadable entries are rebuilt
    }
}

void SeriesCache::store(const std::string& key, const QSeries& s) const
{
    if (!dir_) return;
    std::error_code ec;
    fs::create_directories(*dir_, ec);
    fs::path target = file_for(key);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) return;
        out << json{{"key", key}, {"series", to_json(s)}}.dump();
    }
    fs::rename(tmp, target, ec);
}

namespace {

class FormParser {
public:
    FormParser(const std::string& text, long N, const SeriesCache& cache) : text_(text), N_(N), cache_(cache) {}

    QSeries parse()
    {
        QSeries f = product();
        skip();
        if (pos_ != text_.size()) fail("unexpected '" + text_.substr(pos_) + "'");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& why) const
    {
        throw ParseError("form '" + text_ + "': " + why);
    }

    void skip()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool consume(std::string_view token)
    {
        skip();
        if (text_.compare(pos_, token.size(), token) == 0) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    void expect(char ch)
    {
        if (!consume(std::string_view(&ch, 1))) fail(std::string("expected '") + ch + "'");
    }

    long integer()
    {
        skip();
        size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start || !std::isdigit(static_cast<unsigned char>(text_[pos_ - 1]))) fail("expected an integer");
        return std::stol(text_.substr(start, pos_ - start));
    }

    template <class Build>
    QSeries cached(const std::string& family, Build&& build)
    {
        return cache_.get(family + "/N=" + std::to_string(N_), std::forward<Build>(build));
    }

    QSeries product()
    {
        QSeries f = factor();
        while (consume("*")) f = f * factor();
        return f;
    }

    QSeries factor()
    {
        if (consume("(")) {
            QSeries f = product();
            expect(')');
            return f;
        }
        if (consume("bol(")) {
            QSeries g = product();
            expect(',');
            long k = integer();
            expect(')');
            return bol(g, static_cast<int>(k));
        }
        if (consume("Delta")) return cached("Delta", [&] { return delta(N_); });
        if (consume("j")) return cached("j", [&] { return j_function(N_); });
        if (consume("G")) {
            long w = integer();
            return cached("G" + std::to_string(w), [&] { return eisenstein_G(static_cast<int>(w), N_); });
        }
        if (consume("E")) {
            long w = integer();
            return cached("E" + std::to_string(w), [&] { return eisenstein_E(static_cast<int>(w), N_); });
        }
        for (char family : {'f', 'S'}) {
            if (consume(std::string(1, family))) {
                long w = integer();
                expect('_');
                long m = integer();
                std::string key = std::string(1, family) + std::to_string(w) + "_" + std::to_string(m);
                return cached(key, [&] {
                    return family == 'f' ? weakly_basis(static_cast<int>(w), m, N_)
                                         : cusp_basis(static_cast<int>(w), m, N_);
                });
            }
        }
        fail("unknown token at '" + text_.substr(pos_) + "'");
    }

    std::string text_;
    size_t pos_ = 0;
    long N_;
    const SeriesCache& cache_;
};

QuadraticForm parse_quadratic_form(const std::string& text)
{
    std::string cleaned;
    for (char ch : text)
        if (ch != '[' && ch != ']' && !std::isspace(static_cast<unsigned char>(ch))) cleaned += ch;
    std::vector<BigInt> parts;
    std::stringstream ss(cleaned);
    std::string item;
    while (std::getline(ss, item, ',')) {
        BigInt v;
        if (item.empty() || v.set_str(item, 10) != 0) throw ParseError("form '" + text + "' is not a,b,c");
        parts.push_back(v);
    }
    if (parts.size() != 3) throw ParseError("form '" + text + "' is not a,b,c");
    QuadraticForm Q{parts[0], parts[1], parts[2]};
    if (Q.discriminant() <= 0) throw InvalidDiscriminant("form " + text + " has non-positive discriminant");
    return Q;
}

EvaluationConfig evaluation(const RunConfig& rc)
{
    return {rc.prec_bits, rc.truncation, rc.quad_degree, rc.tol};
}

json complex_json(const ComplexValue& v)
{
    return {{"re", to_double(v.value.re)}, {"im", to_double(v.value.im)}, {"error", v.error}};
}

std::string cell(const json& v)
{
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

json rows_of(const json& j)
{
    for (const char* key : {"cases", "coefficients", "classes"})
        if (j.contains(key) && j[key].is_array()) return j[key];
    return json::array({j});
}

void emit(const json& j, Format format, std::ostream& out)
{
    if (format == Format::json) {
        out << j.dump(2) << "\n";
        return;
    }
    json rows = rows_of(j);
    std::vector<std::string> header;
    for (const auto& row : rows) {
        if (!row.is_object()) continue;
        for (const auto& [k, v] : row.items())
            if (std::find(header.begin(), header.end(), k) == header.end()) header.push_back(k);
    }
    std::vector<std::vector<std::string>> table;
    for (const auto& row : rows) {
        std::vector<std::string> line;
        for (const auto& h : header) line.push_back(row.is_object() && row.contains(h) ? cell(row[h]) : "");
        table.push_back(std::move(line));
    }
    if (format == Format::csv) {
        auto quote = [](const std::string& s) {
            if (s.find_first_of(",\"\n") == std::string::npos) return s;
            std::string q = "\"";
            for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            return q + "\"";
        };
        for (size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << quote(header[i]);
        out << "\n";
        for (const auto& line : table) {
            for (size_t i = 0; i < line.size(); ++i) out << (i ? "," : "") << quote(line[i]);
            out << "\n";
        }
        return;
    }
    // pretty: top-level scalars, then an aligned table
    if (j.is_object() && !(rows.size() == 1 && rows[0] == j)) {
        for (const auto& [k, v] : j.items())
            if (!v.is_array()) out << k << ": " << cell(v) << "\n";
    }
    std::vector<size_t> width(header.size());
    for (size_t i = 0; i < header.size(); ++i) {
        width[i] = header[i].size();
        for (const auto& line : table) width[i] = std::max(width[i], line[i].size());
    }
    for (size_t i = 0; i < header.size(); ++i) out << std::left << std::setw(static_cast<int>(width[i] + 2)) << header[i];
    out << "\n";
    for (const auto& line : table) {
        for (size_t i = 0; i < line.size(); ++i) out << std::left << std::setw(static_cast<int>(width[i] + 2)) << line[i];
        out << "\n";
    }
}

VerificationReport merge(std::string identity, json parameters, const std::vector<VerificationReport>& parts)
{
    VerificationReport all{std::move(identity), std::move(parameters), {}};
    for (const auto& p : parts) all.cases.insert(all.cases.end(), p.cases.begin(), p.cases.end());
    return all;
}

std::optional<Route> parse_route(const std::string& name)
{
    if (name == "auto") return std::nullopt;
    if (name == "quadrature") return Route::quadrature;
    if (name == "periods") return Route::periods;
    if (name == "lstar") return Route::lstar;
    if (name == "regularized" || name == "eisenstein_regularized") return Route::eisenstein_regularized;
    throw ParseError("unknown route '" + name + "'");
}

int half_weight_of(const QSeries& f)
{
    if (!f.weight() || *f.weight() % 2 != 0) throw WeightMismatch("form has no even weight");
    return *f.weight() / 2;
}

}  // namespace

QSeries parse_form(const std::string& text, long N, const SeriesCache& cache)
{
    return FormParser(text, N, cache).parse();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"cycle integrals, periods and Shintani lifts of weakly holomorphic modular forms", "cyclelift"};
    app.require_subcommand(1);
    RunConfig rc;
    std::string format_name = "json";
    std::string cache_flag;
    app.add_option("--prec", rc.prec_bits, "working precision in bits")->check(CLI::Range(53u, 100000u));
    app.add_option("--trunc", rc.truncation, "truncation order N of constructed series")->check(CLI::Range(10L, 100000000L));
    app.add_option("--quad-degree", rc.quad_degree, "Gauss-Legendre degree")->check(CLI::Range(2, 4096));
    app.add_option("--tol", rc.tol, "evaluation tolerance")->check(CLI::PositiveNumber);
    app.add_option("--cache-dir", cache_flag, "series cache directory");
    app.add_option("--format", format_name, "output format")->check(CLI::IsMember({"json", "csv", "pretty"}));

    // forms
    auto* forms = app.add_subcommand("forms", "quadratic form utilities");
    forms->require_subcommand(1);
    std::string form_text;
    long long disc = 0, d1 = 1;
    auto* f_reduce = forms->add_subcommand("reduce", "reduce a form");
    f_reduce->add_option("--form", form_text, "a,b,c")->required();
    auto* f_cycle = forms->add_subcommand("cycle", "reduction cycle of a form");
    f_cycle->add_option("--form", form_text, "a,b,c")->required();
    auto* f_classes = forms->add_subcommand("classes", "class representatives");
    f_classes->add_option("--d", disc, "discriminant")->required();
    auto* f_pell = forms->add_subcommand("pell", "smallest solution of t^2 - D u^2 = 4");
    f_pell->add_option("--d", disc, "discriminant")->required();
    auto* f_genus = forms->add_subcommand("genus", "genus character value");
    f_genus->add_option("--d1", d1, "fundamental discriminant")->required();
    f_genus->add_option("--form", form_text, "a,b,c")->required();

    // cycleint
    std::string f_text = "Delta", route_name = "auto";
    auto* c_int = app.add_subcommand("cycleint", "cycle integral C(f; Q)");
    c_int->add_option("--f", f_text, "form expression")->required();
    c_int->add_option("--form", form_text, "a,b,c")->required();
    c_int->add_option("--route", route_name, "auto, quadrature, periods, lstar or regularized");

    // lift
    long delta_value = 1, m_max = 20;
    std::optional<int> k_opt;
    auto* c_lift = app.add_subcommand("lift", "Shintani lift coefficients");
    c_lift->add_option("--f", f_text, "form expression")->required();
    c_lift->add_option("--delta", delta_value, "fundamental discriminant");
    c_lift->add_option("--mmax", m_max, "largest index")->check(CLI::PositiveNumber);
    c_lift->add_option("--k", k_opt, "half the weight (defaults to the form's)");

    // verify
    auto* c_verify = app.add_subcommand("verify", "run a verification suite");
    c_verify->require_subcommand(1);
    int k = 2;
    std::vector<long> Ds, ms;
    std::vector<std::string> t0_texts;
    long twist_c = 5, twist_d = 2;
    auto* v_siegel = c_verify->add_subcommand("siegel", "sum of zeta_Q(1-k) against zeta(1-k) H(k, D)");
    v_siegel->add_option("--k", k);
    v_siegel->add_option("--d", Ds, "discriminants")->delimiter(',');
    auto* v_eis = c_verify->add_subcommand("eisenstein-lift", "lift of G_2k against Cohen's series");
    v_eis->add_option("--k", k);
    v_eis->add_option("--mmax", m_max);
    auto* v_cor = c_verify->add_subcommand("corollary", "vanishing cycle integrals of Bol images");
    v_cor->add_option("--k", k);
    v_cor->add_option("--m", ms, "principal part orders")->delimiter(',');
    v_cor->add_option("--d", Ds, "discriminants")->delimiter(',');
    auto* v_two = c_verify->add_subcommand("two-route", "quadrature against periods");
    v_two->add_option("--f", f_text, "form expression");
    v_two->add_option("--d", Ds, "discriminants")->delimiter(',');
    auto* v_sym = c_verify->add_subcommand("periods-symmetry", "period relations");
    v_sym->add_option("--f", f_text, "form expression");
    auto* v_t0 = c_verify->add_subcommand("t0-independence", "L*-series at several splitting points");
    v_t0->add_option("--f", f_text, "form expression");
    v_t0->add_option("--c", twist_c, "twist modulus")->check(CLI::PositiveNumber);
    v_t0->add_option("--twist", twist_d, "twist numerator d");
    v_t0->add_option("--t0", t0_texts, "splitting points, e.g. 1/2,1,2")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    rc.format = format_name == "csv" ? Format::csv : format_name == "pretty" ? Format::pretty : Format::json;
    if (!cache_flag.empty())
        rc.cache_dir = cache_flag;
    else if (const char* env = std::getenv("CYCLELIFT_CACHE"); env && *env)
        rc.cache_dir = env;
    SeriesCache cache(rc.cache_dir);
    EvaluationConfig cfg = evaluation(rc);
    PrecisionScope scope(rc.prec_bits);

    try {
        if (*forms) {
            json result;
            if (*f_reduce) {
                QuadraticForm Q = parse_quadratic_form(form_text);
                Reduction r = reduce(Q);
                result = {{"input", to_json(Q)}, {"reduced", to_json(r.form)}, {"transform", to_json(r.transform)}};
            } else if (*f_cycle) {
                QuadraticForm Q = parse_quadratic_form(form_text);
                result = to_json(cycle(reduce(Q).form));
                result["input"] = to_json(Q);
            } else if (*f_classes) {
                json classes = json::array();
                for (const auto& Q : class_representatives(disc)) classes.push_back(to_json(Q));
                result = {{"D", disc}, {"count", classes.size()}, {"classes", classes}};
            } else if (*f_pell) {
                auto [t, u] = pell(to_big(disc));
                result = {{"D", disc}, {"t", t.get_str()}, {"u", u.get_str()}};
            } else if (*f_genus) {
                QuadraticForm Q = parse_quadratic_form(form_text);
                result = {{"D1", d1}, {"form", to_json(Q)}, {"value", genus_char(FundamentalDiscriminant(d1), Q)}};
            }
            emit(result, rc.format, out);
            return 0;
        }

        if (*c_int) {
            QSeries f = parse_form(f_text, rc.truncation, cache);
            QuadraticForm Q = parse_quadratic_form(form_text);
            std::optional<Route> route = parse_route(route_name);
            CycleIntegralResult r;
            if (!route) r = cycle_integral(f, Q, cfg);
            else if (*route == Route::quadrature) r = cycle_integral_quadrature(f, Q, cfg);
            else if (*route == Route::periods) r = cycle_integral_periods(f, Q, cfg);
            else if (*route == Route::lstar) r = cycle_integral_square(f, Q, cfg);
            else r = cycle_integral_square_regularized(f, Q, cfg);
            json result = {{"f", f_text}, {"Q", to_json(Q)}, {"k", r.k}, {"route", to_string(r.route)}};
            result["value"] = complex_json(r.value);
            emit(result, rc.format, out);
            return 0;
        }

        if (*c_lift) {
            QSeries f = parse_form(f_text, rc.truncation, cache);
            int kk = k_opt ? *k_opt : half_weight_of(f);
            LiftSeries lift = shintani_lift(f, kk, delta_value, m_max, cfg);
            json coeffs = json::array();
            for (const auto& [m, t] : lift.coefficients) {
                json routes = json::array();
                for (Route r : t.routes) routes.push_back(to_string(r));
                coeffs.push_back({{"m", m},
                                  {"re", to_double(t.value.value.re)},
                                  {"im", to_double(t.value.value.im)},
                                  {"error", t.value.error},
                                  {"routes", routes}});
            }
            emit({{"f", f_text}, {"k", kk}, {"delta", delta_value}, {"m_max", m_max}, {"coefficients", coeffs}},
                 rc.format, out);
            return 0;
        }

        VerificationReport report;
        if (*v_siegel) {
            if (Ds.empty()) Ds = {5, 8, 12, 13, 17};
            std::vector<VerificationReport> parts;
            for (long D : Ds) parts.push_back(verify_siegel(k, D, cfg));
            report = merge("siegel", {{"k", k}, {"D", Ds}}, parts);
        } else if (*v_eis) {
            report = verify_eisenstein_lift(k, m_max, cfg);
        } else if (*v_cor) {
            if (ms.empty()) ms = {1, 2};
            if (Ds.empty()) Ds = {5, 8, 13};
            report = verify_corollary(k, ms, Ds, cfg);
        } else if (*v_two) {
            if (Ds.empty()) Ds = {5, 8, 12};
            report = verify_two_route(parse_form(f_text, rc.truncation, cache), f_text, Ds, cfg);
        } else if (*v_sym) {
            report = verify_period_symmetry(parse_form(f_text, rc.truncation, cache), f_text, cfg);
        } else if (*v_t0) {
            if (t0_texts.empty()) t0_texts = {"1/2", "1", "2"};
            std::vector<Rational> t0s;
            for (const auto& t : t0_texts) t0s.push_back(parse_rational(t));
            report = verify_t0_independence(parse_form(f_text, rc.truncation, cache), f_text, twist_c, twist_d, t0s,
                                            cfg);
        }
        emit(to_json(report), rc.format, out);
        return report.pass() ? 0 : 1;
    } catch (const ToleranceNotMet& e) {
        err << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        err << e.what() << "\n";
        return 2;
    }
}

}  // namespace cyclelift::cli
