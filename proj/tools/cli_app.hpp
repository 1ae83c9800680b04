#pragma once

// Command-line front end. Everything lives here so tests can drive the CLI
// in-process with string streams; main.cpp only forwards argv.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccov/ccov.hpp"
#include "ccov/verify.hpp"

namespace ccov::cli
{

using Json = nlohmann::ordered_json;

//---------------------------------------------------------------------------//
// Exit codes and errors
//---------------------------------------------------------------------------//

enum ExitCode : int
{
    exit_ok = 0,
    exit_check_failed = 1,
    exit_schema = 2,
    exit_branch_point = 3,
};

//! Malformed input: bad literal, missing field, unknown subject
struct SchemaError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

//---------------------------------------------------------------------------//
// Parsing helpers
//---------------------------------------------------------------------------//

inline double parse_real(std::string const& text)
{
    std::string const s = text;
    if (s.empty())
        throw SchemaError("empty number");
    char* end = nullptr;
    double const x = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || !std::isfinite(x))
        throw SchemaError("malformed number '" + text + "'");
    return x;
}

/*!
 * Complex literal of the form a, bi, a+bi or a-bi (no spaces). A bare i
 * means 1i. Exponents are allowed in either part.
 */
inline Complex parse_complex(std::string const& text)
{
    std::string s;
    for (char ch : text)
    {
        if (ch == ' ')
            throw SchemaError("complex literal must not contain spaces: '" + text + "'");
        s.push_back(ch);
    }
    if (s.empty())
        throw SchemaError("empty complex literal");
    if (s.back() != 'i')
        return {parse_real(s), 0.0};

    std::string body = s.substr(0, s.size() - 1);
    // split at the last sign that is not a leading sign or an exponent sign
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;)
    {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E')
        {
            split = i;
            break;
        }
    }
    auto imag_part = [&](std::string const& t) {
        if (t.empty() || t == "+")
            return 1.0;
        if (t == "-")
            return -1.0;
        return parse_real(t);
    };
    try
    {
        if (split == std::string::npos)
            return {0.0, imag_part(body)};
        return {parse_real(body.substr(0, split)), imag_part(body.substr(split))};
    }
    catch (SchemaError const&)
    {
        throw SchemaError("malformed complex literal '" + text + "'");
    }
}

inline std::vector<std::string> split_list(std::string const& text)
{
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text)
    {
        if (ch == ',')
        {
            out.push_back(cur);
            cur.clear();
        }
        else
        {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

inline std::vector<Complex> parse_complex_list(std::string const& text, std::size_t expected,
                                               char const* what)
{
    auto const parts = split_list(text);
    if (parts.size() != expected)
    {
        throw SchemaError(std::string(what) + " expects " + std::to_string(expected)
                          + " comma-separated values");
    }
    std::vector<Complex> out;
    for (auto const& p : parts)
        out.push_back(parse_complex(p));
    return out;
}

//! Accepts {"re": x, "im": y}, a bare number, or a literal string "a+bi"
inline Complex complex_from_json(Json const& j, char const* what)
{
    if (j.is_number())
        return {j.get<double>(), 0.0};
    if (j.is_string())
        return parse_complex(j.get<std::string>());
    if (j.is_object() && j.contains("re") && j["re"].is_number())
    {
        double im = 0.0;
        if (j.contains("im"))
        {
            if (!j["im"].is_number())
                throw SchemaError(std::string(what) + ".im must be a number");
            im = j["im"].get<double>();
        }
        return {j["re"].get<double>(), im};
    }
    throw SchemaError(std::string(what) + " must be a complex number {\"re\",\"im\"}");
}

inline Complex field(Json const& obj, char const* key)
{
    if (!obj.is_object() || !obj.contains(key))
        throw SchemaError(std::string("missing field '") + key + "'");
    return complex_from_json(obj[key], key);
}

//---------------------------------------------------------------------------//
// Configuration and output
//---------------------------------------------------------------------------//

enum class Format
{
    Json,
    Csv
};

struct RunConfig
{
    Units units{Units::Natural};
    BoostMode mode{BoostMode::Option1RealC};
    std::optional<Complex> c;
    Complex gauge_s{1.0, 0.0};
    Format format{Format::Json};
    int precision{15};
    std::uint64_t seed{42};

    PhysicalConstants constants() const
    {
        return units == Units::SI ? PhysicalConstants::si() : PhysicalConstants::natural();
    }

    Boost boost(Complex v) const { return Boost::make(v, mode, constants(), c, gauge_s); }
};

//! Rounds to `digits` significant digits so dumps honour --precision
inline double round_sig(double x, int digits)
{
    if (x == 0.0)
        return 0.0;  // drops the sign of -0
    if (!std::isfinite(x))
        return x;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
    return std::strtod(buf, nullptr);
}

class Writer
{
  public:
    explicit Writer(RunConfig const& cfg) : cfg_(cfg) {}

    double real(double x) const { return round_sig(x, cfg_.precision); }

    Json complex(Complex w) const
    {
        Json j;
        j["re"] = real(w.real());
        j["im"] = real(w.imag());
        return j;
    }

    std::string csv_number(double x) const
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*g", cfg_.precision, x == 0.0 ? 0.0 : x);
        return buf;
    }

  private:
    RunConfig const& cfg_;
};

inline std::string_view to_string(Units u)
{
    return u == Units::SI ? "si" : "natural";
}

//! One-row CSV from named complex, real and boolean columns
class CsvRow
{
  public:
    explicit CsvRow(Writer const& w) : w_(w) {}

    void complex(std::string const& name, Complex v)
    {
        add(name + "_re", w_.csv_number(v.real()));
        add(name + "_im", w_.csv_number(v.imag()));
    }
    void real(std::string const& name, double v) { add(name, w_.csv_number(v)); }
    void flag(std::string const& name, bool v) { add(name, v ? "true" : "false"); }
    void text(std::string const& name, std::string const& v) { add(name, v); }

    void write(std::ostream& out) const
    {
        for (std::size_t i = 0; i < names_.size(); ++i)
            out << (i ? "," : "") << names_[i];
        out << '\n';
        for (std::size_t i = 0; i < values_.size(); ++i)
            out << (i ? "," : "") << values_[i];
        out << '\n';
    }

  private:
    void add(std::string name, std::string value)
    {
        names_.push_back(std::move(name));
        values_.push_back(std::move(value));
    }

    Writer const& w_;
    std::vector<std::string> names_;
    std::vector<std::string> values_;
};

//! Walks a JSON object and flattens complex leaves into CSV columns
inline void flatten(Json const& j, std::string const& prefix, CsvRow& row)
{
    if (j.is_object() && j.size() == 2 && j.contains("re") && j.contains("im"))
    {
        row.complex(prefix, {j["re"].get<double>(), j["im"].get<double>()});
        return;
    }
    if (j.is_object())
    {
        for (auto const& [key, val] : j.items())
            flatten(val, prefix.empty() ? key : prefix + "_" + key, row);
        return;
    }
    if (j.is_boolean())
        row.flag(prefix, j.get<bool>());
    else if (j.is_number())
        row.real(prefix, j.get<double>());
    else if (j.is_string())
        row.text(prefix, j.get<std::string>());
}

inline void emit(Json const& j, RunConfig const& cfg, std::ostream& out)
{
    if (cfg.format == Format::Json)
    {
        out << j.dump(2) << '\n';
        return;
    }
    Writer const w(cfg);
    CsvRow row(w);
    flatten(j, "", row);
    row.write(out);
}

inline Json read_stdin_json(std::istream& in)
{
    std::string const text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    try
    {
        return Json::parse(text);
    }
    catch (Json::parse_error const& e)
    {
        throw SchemaError(std::string("stdin is not valid JSON: ") + e.what());
    }
}

inline Json config_json(RunConfig const& cfg, Writer const& w)
{
    Json j;
    j["units"] = to_string(cfg.units);
    j["mode"] = to_string(cfg.mode);
    j["gauge_s"] = w.complex(cfg.gauge_s);
    if (cfg.mode == BoostMode::GeneralComplexC)
        j["c"] = w.complex(cfg.c.value_or(Complex(cfg.constants().c_mag, 0.0)));
    return j;
}

inline Json boost_meta(Boost const& b, Writer const& w)
{
    Json m;
    m["gamma_product"] = w.complex(b.gamma_product());
    m["sqrt_factor"] = w.complex(b.root());
    m["near_branch_cut"] = b.near_branch_cut();
    m["superluminal"] = b.superluminal();
    return m;
}

//---------------------------------------------------------------------------//
// Subjects of the boost command
//---------------------------------------------------------------------------//

struct Subject
{
    std::string name;                // event | fourmomentum | wavefourvector
    std::array<char const*, 2> keys; // field names in order
};

inline Subject subject_by_name(std::string const& name)
{
    if (name == "event")
        return {name, {"z", "t"}};
    if (name == "fourmomentum")
        return {name, {"E", "p"}};
    if (name == "wavefourvector")
        return {name, {"omega", "k"}};
    throw SchemaError("unknown subject '" + name + "'");
}

inline std::array<Complex, 2> transform_subject(Subject const& subj, Boost const& b,
                                                std::array<Complex, 2> in, bool inverse)
{
    if (subj.name == "event")
    {
        Event const e{in[0], in[1]};
        Event const r = inverse ? boost_inverse(b, e) : boost_forward(b, e);
        return {r.z, r.t};
    }
    if (subj.name == "fourmomentum")
    {
        FourMomentum const f{in[0], in[1]};
        FourMomentum const r = inverse ? lp_inverse(b, f) : lp_forward(b, f);
        return {r.E, r.p};
    }
    WaveFourVector const wv{in[0], in[1]};
    WaveFourVector const r = inverse ? transform_wave_inverse(b, wv) : transform_wave(b, wv);
    return {r.omega, r.k};
}

//! |Im| at or below this (relative to max(1, |value|)) reports a time as real
inline constexpr double real_time_tol = 1e-14;

//---------------------------------------------------------------------------//
// Application
//---------------------------------------------------------------------------//

class App
{
  public:
    App(std::istream& in, std::ostream& out, std::ostream& err) : in_(in), out_(out), err_(err) {}

    int run(std::vector<std::string> const& args);

  private:
    int cmd_constants();
    int cmd_boost();
    int cmd_add_vel();
    int cmd_momentum();
    int cmd_dispersion();
    int cmd_wave_check();
    int cmd_check();
    int cmd_table();

    void finalize_config();
    void adopt_piped_config(Json const& doc);
    Json stdin_or_empty(std::string const& input);

    int report_error(std::string_view code, std::string const& message, int exit_code)
    {
        Json j;
        j["error"]["code"] = code;
        j["error"]["message"] = message;
        err_ << j.dump() << '\n';
        return exit_code;
    }

    std::istream& in_;
    std::ostream& out_;
    std::ostream& err_;

    RunConfig cfg_;

    // raw global flags
    std::string units_ = "natural";
    std::string mode_ = "option1";
    std::string c_text_;
    std::string gauge_text_ = "1";
    std::string format_ = "json";
    int precision_ = 15;
    std::uint64_t seed_ = 42;

    // global flags given on the command line win over a piped "config"
    bool units_given_ = false;
    bool mode_given_ = false;
    bool c_given_ = false;
    bool gauge_given_ = false;

    // raw subcommand options
    std::string v_text_;
    std::string u_text_;
    std::string event_text_;
    std::string momentum_text_;
    std::string wave_text_;
    std::string m0_text_ = "1";
    std::string k_text_;
    std::string omega_text_;
    std::string z_text_ = "0";
    std::string t_text_ = "0";
    std::string amp_text_ = "1";
    std::string branch_ = "retarded";
    std::string input_;
    std::string suite_ = "all";
    std::string curve_;
    std::string range_text_;
    double from_ = 0.0;
    double to_ = 0.0;
    int n_ = 100;
    double angle_ = 0.0;
    double h_ = 1e-5;
    std::size_t samples_ = 0;
    int steps_ = 4;
    bool inverse_ = false;
    bool spinors_ = false;
};

inline void App::finalize_config()
{
    if (units_ == "natural")
        cfg_.units = Units::Natural;
    else if (units_ == "si")
        cfg_.units = Units::SI;
    else
        throw SchemaError("--units must be natural or si");

    if (mode_ == "option1")
        cfg_.mode = BoostMode::Option1RealC;
    else if (mode_ == "option2")
        cfg_.mode = BoostMode::Option2ConjugateParallel;
    else if (mode_ == "general")
        cfg_.mode = BoostMode::GeneralComplexC;
    else
        throw SchemaError("--mode must be option1, option2 or general");

    if (!c_text_.empty())
    {
        if (cfg_.mode != BoostMode::GeneralComplexC)
            throw SchemaError("--c is only meaningful with --mode general");
        cfg_.c = parse_complex(c_text_);
    }
    cfg_.gauge_s = parse_complex(gauge_text_);
    if (cfg_.mode != BoostMode::GeneralComplexC && cfg_.gauge_s != Complex(1.0, 0.0))
        throw SchemaError("--gauge-s other than 1 requires --mode general");

    if (format_ == "json")
        cfg_.format = Format::Json;
    else if (format_ == "csv")
        cfg_.format = Format::Csv;
    else
        throw SchemaError("--format must be json or csv");

    if (precision_ < 6 || precision_ > 17)
        throw SchemaError("--precision must lie in [6, 17]");
    cfg_.precision = precision_;
    cfg_.seed = seed_;
}

inline Json App::stdin_or_empty(std::string const& input)
{
    if (input.empty())
        return Json::object();
    if (input != "-")
        throw SchemaError("only '-' (stdin) is accepted as an input argument");
    Json j = read_stdin_json(in_);
    if (!j.is_object())
        throw SchemaError("stdin JSON must be an object");
    adopt_piped_config(j);
    return j;
}

//! Reuse the frame of a piped result so `boost ... | boost --inverse -` round-trips
inline void App::adopt_piped_config(Json const& doc)
{
    if (!doc.contains("config"))
        return;
    Json const& c = doc["config"];
    if (!c.is_object())
        throw SchemaError("'config' must be an object");
    auto text = [&](char const* key) {
        if (!c[key].is_string())
            throw SchemaError(std::string("config field '") + key + "' must be a string");
        return c[key].get<std::string>();
    };
    if (!units_given_ && c.contains("units"))
        units_ = text("units");
    if (!mode_given_ && c.contains("mode"))
        mode_ = text("mode");
    if (!mode_given_ && !c_given_)
        c_text_.clear();
    if (!gauge_given_)
        gauge_text_ = "1";
    finalize_config();
    if (!c_given_ && c.contains("c") && cfg_.mode == BoostMode::GeneralComplexC)
        cfg_.c = complex_from_json(c["c"], "config.c");
    if (!gauge_given_ && c.contains("gauge_s"))
    {
        cfg_.gauge_s = complex_from_json(c["gauge_s"], "config.gauge_s");
        if (cfg_.mode != BoostMode::GeneralComplexC && cfg_.gauge_s != Complex(1.0, 0.0))
            throw SchemaError("piped gauge_s other than 1 requires mode general");
    }
}

inline int App::cmd_constants()
{
    Writer const w(cfg_);
    auto const pc = cfg_.constants();
    Json j;
    j["command"] = "constants";
    j["units"] = to_string(cfg_.units);
    j["c_mag"] = w.real(pc.c_mag);
    j["hbar"] = w.real(pc.hbar);
    emit(j, cfg_, out_);
    return exit_ok;
}

inline int App::cmd_boost()
{
    Writer const w(cfg_);
    Json const doc = stdin_or_empty(input_);

    Complex v{};
    if (!v_text_.empty())
        v = parse_complex(v_text_);
    else if (doc.contains("v"))
        v = complex_from_json(doc["v"], "v");
    else
        throw SchemaError("boost needs --v or a 'v' field on stdin");

    int given = !event_text_.empty() + !momentum_text_.empty() + !wave_text_.empty();
    if (given > 1)
        throw SchemaError("give only one of --event, --momentum, --wave");

    std::optional<Subject> subj;
    std::array<Complex, 2> in{};
    if (given == 1)
    {
        std::string const& text = !event_text_.empty() ? event_text_
                                  : !momentum_text_.empty() ? momentum_text_
                                                            : wave_text_;
        subj = subject_by_name(!event_text_.empty()      ? "event"
                               : !momentum_text_.empty() ? "fourmomentum"
                                                         : "wavefourvector");
        auto const vals = parse_complex_list(text, 2, "subject");
        in = {vals[0], vals[1]};
    }
    else if (doc.contains("subject"))
    {
        if (!doc["subject"].is_string())
            throw SchemaError("'subject' must be a string");
        subj = subject_by_name(doc["subject"].get<std::string>());
        if (!doc.contains("values"))
            throw SchemaError("missing field 'values'");
        in = {field(doc["values"], subj->keys[0]), field(doc["values"], subj->keys[1])};
    }
    else
    {
        throw SchemaError("boost needs --event, --momentum, --wave or a JSON subject");
    }

    Boost const b = cfg_.boost(v * 1.0);
    auto const res = transform_subject(*subj, b, in, inverse_);

    Json j;
    j["command"] = "boost";
    j["subject"] = subj->name;
    j["direction"] = inverse_ ? "inverse" : "forward";
    j["config"] = config_json(cfg_, w);
    j["v"] = w.complex(v);
    j["input"][subj->keys[0]] = w.complex(in[0]);
    j["input"][subj->keys[1]] = w.complex(in[1]);
    j["values"][subj->keys[0]] = w.complex(res[0]);
    j["values"][subj->keys[1]] = w.complex(res[1]);
    Json meta = boost_meta(b, w);
    if (subj->name == "event")
    {
        meta["t_is_real"]
            = std::abs(res[1].imag()) <= real_time_tol * std::max(1.0, std::abs(res[1]));
    }
    j["meta"] = meta;
    emit(j, cfg_, out_);
    return exit_ok;
}

inline int App::cmd_add_vel()
{
    Writer const w(cfg_);
    Json const doc = stdin_or_empty(input_);
    Complex v{};
    if (!v_text_.empty())
        v = parse_complex(v_text_);
    else if (doc.contains("v"))
        v = complex_from_json(doc["v"], "v");
    else
        throw SchemaError("add-vel needs --v or a 'v' field on stdin");

    Complex u{};
    if (!u_text_.empty())
        u = parse_complex(u_text_);
    else if (doc.contains("values"))
        u = field(doc["values"], "u");
    else
        throw SchemaError("add-vel needs --u or a 'values.u' field on stdin");

    Boost const b = cfg_.boost(v);
    Complex const r = inverse_ ? add_velocities_inv(u, b) : add_velocities(u, b);

    Json j;
    j["command"] = "add-vel";
    j["direction"] = inverse_ ? "inverse" : "forward";
    j["config"] = config_json(cfg_, w);
    j["v"] = w.complex(v);
    j["input"]["u"] = w.complex(u);
    j["values"]["u"] = w.complex(r);
    j["meta"] = boost_meta(b, w);
    emit(j, cfg_, out_);
    return exit_ok;
}

inline int App::cmd_momentum()
{
    Writer const w(cfg_);
    Json const doc = stdin_or_empty(input_);
    Complex v{};
    if (!v_text_.empty())
        v = parse_complex(v_text_);
    else if (doc.contains("v"))
        v = complex_from_json(doc["v"], "v");
    else
        throw SchemaError("momentum needs --v or a 'v' field on stdin");
    Complex const m0 = doc.contains("m0") ? complex_from_json(doc["m0"], "m0")
                                          : parse_complex(m0_text_);

    Boost const b = cfg_.boost(v);
    FourMomentum const fm = momentum_energy_from_rest(RestMass{m0}, b);

    Json j;
    j["command"] = "momentum";
    j["subject"] = "fourmomentum";
    j["config"] = config_json(cfg_, w);
    j["v"] = w.complex(v);
    j["m0"] = w.complex(m0);
    j["values"]["E"] = w.complex(fm.E);
    j["values"]["p"] = w.complex(fm.p);
    Json meta = boost_meta(b, w);
    meta["invariant_mass_sq"] = w.complex(invariant_mass_sq(fm, b));
    meta["c_sq"] = w.complex(b.c_sq());
    j["meta"] = meta;
    emit(j, cfg_, out_);
    return exit_ok;
}

inline int App::cmd_dispersion()
{
    Writer const w(cfg_);
    auto const pc = cfg_.constants();
    if (k_text_.empty())
        throw SchemaError("dispersion needs --k (scalar or kx,ky,kz)");
    auto const parts = split_list(k_text_);
    Complex3 k{};
    if (parts.size() == 1)
        k = {parse_complex(parts[0]), 0.0, 0.0};
    else if (parts.size() == 3)
        k = {parse_complex(parts[0]), parse_complex(parts[1]), parse_complex(parts[2])};
    else
        throw SchemaError("--k takes one or three components");
    Complex const m0 = parse_complex(m0_text_);
    Complex const s = cfg_.gauge_s;
    Branch br{};
    if (branch_ == "retarded")
        br = Branch::Retarded;
    else if (branch_ == "advanced")
        br = Branch::Advanced;
    else
        throw SchemaError("--branch must be retarded or advanced");

    auto const roots = kgf_dispersion_roots(k, m0, s, pc);
    Complex const k_mag = principal_sqrt(dot(k, k)).value;

    Json j;
    j["command"] = "dispersion";
    j["config"] = config_json(cfg_, w);
    j["m0"] = w.complex(m0);
    j["values"]["omega_plus"] = w.complex(roots.omega_plus);
    j["values"]["omega_minus"] = w.complex(roots.omega_minus);
    j["values"]["energy_exact"] = w.complex(schrodinger_sqrt_energy(k_mag, m0, s, pc, br));
    if (m0 != Complex(0.0, 0.0))
        j["values"]["energy_nonrel"] = w.complex(nonrel_expansion(k_mag, m0, s, pc));
    j["meta"]["near_branch_cut"] = roots.near_cut;
    j["meta"]["branch"] = to_string(br);

    if (!omega_text_.empty())
    {
        Complex const omega = parse_complex(omega_text_);
        auto const fc = dirac_factorization_check(k, omega, m0, s, pc);
        j["values"]["kgf_residual"] = w.complex(fc.kgf_scalar);
        j["values"]["factorization_residual_max"] = w.real(max_abs(fc.residual));
    }
    if (spinors_)
    {
        Json list = Json::array();
        for (auto const& sp : dirac_plane_spinors(k, m0, s, pc, br))
        {
            Json e;
            e["omega"] = w.complex(sp.omega);
            Json u = Json::array();
            for (Complex c : sp.u)
                u.push_back(w.complex(c));
            e["spinor"] = u;
            e["residual"] = w.real(sp.residual);
            list.push_back(e);
        }
        if (cfg_.format == Format::Csv)
        {
            // one row per spinor, header from the first
            bool first = true;
            for (auto const& sp : dirac_plane_spinors(k, m0, s, pc, br))
            {
                CsvRow row(w);
                row.complex("omega", sp.omega);
                for (std::size_t c = 0; c < 4; ++c)
                    row.complex("u" + std::to_string(c), sp.u[c]);
                row.real("residual", sp.residual);
                std::ostringstream os;
                row.write(os);
                std::string text = os.str();
                out_ << (first ? text : text.substr(text.find('\n') + 1));
                first = false;
            }
            return exit_ok;
        }
        j["spinors"] = list;
    }
    emit(j, cfg_, out_);
    return exit_ok;
}

inline int App::cmd_wave_check()
{
    Writer const w(cfg_);
    auto const pc = cfg_.constants();
    if (omega_text_.empty() || k_text_.empty())
        throw SchemaError("wave-check needs --omega and --k");
    WaveFourVector const wv{parse_complex(omega_text_), parse_complex(k_text_)};
    Event const e{parse_complex(z_text_), parse_complex(t_text_)};
    Complex const v = v_text_.empty() ? Complex(0.0, 0.0) : parse_complex(v_text_);
    PlaneWave const pw(parse_complex(amp_text_), wv);
    if (!(h_ > 0.0))
        throw SchemaError("--h must be positive");

    Boost const b = cfg_.boost(v);
    WaveFourVector const wv2 = transform_wave(b, wv);
    Event const e2 = boost_forward(b, e);
    Complex const ph = phase(wv, e);
    Complex const ph2 = phase(wv2, e2);
    double const scale = std::max(1.0, std::abs(wv.k * e.z) + std::abs(wv.omega * e.t));
    double const deviation = std::abs(ph2 - ph) / scale;

    auto const local = extract_omega_k(
        [&](Complex z, Complex t) { return evaluate_planewave(pw, z, t); }, e.z, e.t, h_);
    FourMomentum const fm = de_broglie(wv, pc);

    Json j;
    j["command"] = "wave-check";
    j["config"] = config_json(cfg_, w);
    j["v"] = w.complex(v);
    j["values"]["psi"] = w.complex(evaluate_planewave(pw, e.z, e.t));
    j["values"]["phase"] = w.complex(ph);
    j["values"]["phase_boosted"] = w.complex(ph2);
    j["values"]["omega_boosted"] = w.complex(wv2.omega);
    j["values"]["k_boosted"] = w.complex(wv2.k);
    j["values"]["E"] = w.complex(fm.E);
    j["values"]["p"] = w.complex(fm.p);
    if (local.wave)
    {
        j["values"]["omega_extracted"] = w.complex(local.wave->omega);
        j["values"]["k_extracted"] = w.complex(local.wave->k);
    }
    j["meta"]["phase_deviation"] = w.real(deviation);
    j["meta"]["holomorphy_deviation_z"] = w.real(local.z_report.deviation);
    j["meta"]["holomorphy_deviation_t"] = w.real(local.t_report.deviation);
    j["meta"]["holomorphic"] = local.holomorphic();
    bool const ok = deviation <= 1e-11 && local.holomorphic();
    j["meta"]["passed"] = ok;
    emit(j, cfg_, out_);
    return ok ? exit_ok : exit_check_failed;
}

inline Json report_json(verify::SuiteReport const& rep, Writer const& w)
{
    Json j;
    j["suite"] = rep.suite;
    j["passed"] = rep.passed();
    Json lines = Json::array();
    for (auto const& l : rep.lines)
    {
        Json e;
        e["identity"] = l.identity;
        e["max_deviation"] = w.real(l.max_deviation);
        e["tolerance"] = w.real(l.tolerance);
        e["samples"] = l.samples;
        e["passed"] = l.passed;
        if (l.informational)
            e["informational"] = true;
        lines.push_back(e);
    }
    j["identities"] = lines;
    if (!rep.table.empty())
    {
        Json t = Json::array();
        for (auto const& [label, value] : rep.table)
            t.push_back({{"label", label}, {"value", w.real(value)}});
        j["table"] = t;
    }
    return j;
}

inline int App::cmd_check()
{
    Writer const w(cfg_);
    verify::CheckOptions opt;
    opt.seed = cfg_.seed;
    if (samples_ != 0)
        opt.samples = samples_;
    opt.steps = steps_;

    std::vector<std::string> names;
    if (suite_ == "all")
    {
        for (auto n : verify::suite_names())
            names.emplace_back(n);
    }
    else
    {
        names.push_back(suite_);
    }

    std::vector<verify::SuiteReport> reports;
    for (auto const& name : names)
    {
        auto rep = verify::run_suite(name, opt);
        if (!rep)
            throw SchemaError("unknown suite '" + name + "'");
        reports.push_back(std::move(*rep));
    }
    bool const all_passed = std::all_of(reports.begin(), reports.end(),
                                        [](auto const& r) { return r.passed(); });

    if (cfg_.format == Format::Csv)
    {
        out_ << "suite,identity,max_deviation,tolerance,samples,passed\n";
        for (auto const& rep : reports)
        {
            for (auto const& l : rep.lines)
            {
                out_ << rep.suite << ",\"" << l.identity << "\"," << w.csv_number(l.max_deviation)
                     << ',' << w.csv_number(l.tolerance) << ',' << l.samples << ','
                     << (l.informational ? "info" : l.passed ? "true" : "false") << '\n';
            }
        }
    }
    else
    {
        Json j;
        j["command"] = "check";
        j["seed"] = cfg_.seed;
        j["passed"] = all_passed;
        Json suites = Json::array();
        for (auto const& rep : reports)
            suites.push_back(report_json(rep, w));
        j["suites"] = suites;
        out_ << j.dump(2) << '\n';
    }
    return all_passed ? exit_ok : exit_check_failed;
}

inline int App::cmd_table()
{
    Writer const w(cfg_);
    auto const pc = cfg_.constants();
    if (!range_text_.empty())
    {
        auto const parts = split_list(range_text_);
        if (parts.size() != 2)
            throw SchemaError("--range expects lo,hi");
        from_ = parse_real(parts[0]);
        to_ = parse_real(parts[1]);
    }
    if (n_ < 1 || from_ > to_ || (n_ == 1 && from_ != to_) || (n_ > 1 && from_ == to_))
        throw SchemaError("malformed range: need lo <= hi and n >= 2 (n = 1 only for lo == hi)");

    Complex const m0 = parse_complex(m0_text_);
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    auto sample = [&](int i) {
        if (n_ == 1)
            return from_;
        return from_ + (to_ - from_) * static_cast<double>(i) / static_cast<double>(n_ - 1);
    };

    if (curve_ == "worldline-time")
    {
        columns = {"beta", "option1_re", "option1_im", "option2_re", "option2_im"};
        for (int i = 0; i < n_; ++i)
        {
            double const beta = sample(i);
            Complex const v = std::polar(beta * pc.c_mag, angle_);
            Complex const t1 = worldline_time(Boost::option1(v, pc), 1.0).t;
            Complex const t2 = worldline_time(Boost::option2(v, pc), 1.0).t;
            rows.push_back({beta, t1.real(), t1.imag(), t2.real(), t2.imag()});
        }
    }
    else if (curve_ == "dispersion")
    {
        columns = {"k", "omega_plus_re", "omega_plus_im", "omega_minus_re", "omega_minus_im"};
        for (int i = 0; i < n_; ++i)
        {
            double const k = sample(i);
            auto const r = kgf_dispersion_roots(k, m0, cfg_.gauge_s, pc);
            rows.push_back({k, r.omega_plus.real(), r.omega_plus.imag(), r.omega_minus.real(),
                            r.omega_minus.imag()});
        }
    }
    else if (curve_ == "nonrel-error")
    {
        columns = {"k", "exact_re", "exact_im", "expansion_re", "expansion_im", "error"};
        for (int i = 0; i < n_; ++i)
        {
            double const k = sample(i);
            Complex const exact = schrodinger_sqrt_energy(k, m0, cfg_.gauge_s, pc, Branch::Retarded);
            Complex const approx = nonrel_expansion(k, m0, cfg_.gauge_s, pc);
            rows.push_back({k, exact.real(), exact.imag(), approx.real(), approx.imag(),
                            std::abs(exact - approx)});
        }
    }
    else
    {
        throw SchemaError("unknown curve '" + curve_
                          + "' (worldline-time, dispersion, nonrel-error)");
    }

    if (cfg_.format == Format::Csv)
    {
        for (std::size_t c = 0; c < columns.size(); ++c)
            out_ << (c ? "," : "") << columns[c];
        out_ << '\n';
        for (auto const& row : rows)
        {
            for (std::size_t c = 0; c < row.size(); ++c)
                out_ << (c ? "," : "") << w.csv_number(row[c]);
            out_ << '\n';
        }
        return exit_ok;
    }
    Json j;
    j["command"] = "table";
    j["curve"] = curve_;
    j["config"] = config_json(cfg_, w);
    j["columns"] = columns;
    Json jr = Json::array();
    for (auto const& row : rows)
    {
        Json r = Json::array();
        for (double x : row)
            r.push_back(w.real(x));
        jr.push_back(r);
    }
    j["rows"] = jr;
    out_ << j.dump(2) << '\n';
    return exit_ok;
}

inline int App::run(std::vector<std::string> const& args)
{
    CLI::App app{"Complex-velocity special relativity toolkit", "ccov"};
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--units", units_, "natural (default) or si");
    app.add_option("--mode", mode_, "option1 (default), option2 or general");
    app.add_option("--c", c_text_, "complex invariant speed for --mode general");
    app.add_option("--gauge-s", gauge_text_, "gauge factor s (general mode)");
    app.add_option("--format", format_, "json (default) or csv");
    app.add_option("--precision", precision_, "significant output digits, 6..17");
    app.add_option("--seed", seed_, "seed for randomized checks");

    auto* constants = app.add_subcommand("constants", "print the configured constants");

    auto* boost = app.add_subcommand("boost", "transform an event, four-momentum or wave");
    boost->add_option("--v", v_text_, "relative velocity a+bi");
    boost->add_option("--event", event_text_, "z,t");
    boost->add_option("--momentum", momentum_text_, "E,p");
    boost->add_option("--wave", wave_text_, "omega,k");
    boost->add_flag("--inverse", inverse_, "apply the inverse transform");
    boost->add_option("input", input_, "'-' to read JSON from stdin");

    auto* add_vel = app.add_subcommand("add-vel", "relativistic velocity addition");
    add_vel->add_option("--u", u_text_, "velocity to transform");
    add_vel->add_option("--v", v_text_, "frame velocity");
    add_vel->add_flag("--inverse", inverse_, "apply the inverse law");
    add_vel->add_option("input", input_, "'-' to read JSON from stdin");

    auto* momentum = app.add_subcommand("momentum", "energy and momentum from rest mass");
    momentum->add_option("--m0", m0_text_, "rest mass");
    momentum->add_option("--v", v_text_, "velocity");
    momentum->add_option("input", input_, "'-' to read JSON from stdin");

    auto* dispersion = app.add_subcommand("dispersion", "KGF roots, Schroedinger energies, spinors");
    dispersion->add_option("--k", k_text_, "wave number (k or kx,ky,kz)");
    dispersion->add_option("--m0", m0_text_, "rest mass");
    dispersion->add_option("--omega", omega_text_, "frequency for residual checks");
    dispersion->add_option("--branch", branch_, "retarded or advanced");
    dispersion->add_flag("--spinors", spinors_, "emit Dirac plane-wave spinors");

    auto* wave = app.add_subcommand("wave-check", "plane-wave phase covariance at one event");
    wave->add_option("--omega", omega_text_, "angular frequency");
    wave->add_option("--k", k_text_, "wave number");
    wave->add_option("--v", v_text_, "boost velocity");
    wave->add_option("--z", z_text_, "position");
    wave->add_option("--t", t_text_, "time");
    wave->add_option("--amp", amp_text_, "amplitude");
    wave->add_option("--step", h_, "derivative step");

    auto* check = app.add_subcommand("check", "run seeded verification suites");
    check->add_option("suite", suite_, "all or one suite name");
    check->add_option("--samples", samples_, "samples per suite (default: suite-specific)");
    check->add_option("--steps", steps_, "refinement levels for kgf-grid");

    auto* table = app.add_subcommand("table", "tabulate a curve for plotting");
    table->add_option("curve", curve_, "worldline-time, dispersion or nonrel-error")->required();
    table->add_option("--from", from_, "range start");
    table->add_option("--to", to_, "range end");
    table->add_option("--range", range_text_, "lo,hi");
    table->add_option("--n", n_, "number of rows");
    table->add_option("--m0", m0_text_, "rest mass");
    table->add_option("--angle", angle_, "phase of v for worldline-time (rad)");

    std::vector<char const*> argv;
    argv.push_back("ccov");
    for (auto const& a : args)
        argv.push_back(a.c_str());

    try
    {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (CLI::CallForHelp const&)
    {
        out_ << app.help();
        return exit_ok;
    }
    catch (CLI::ParseError const& e)
    {
        return report_error("usage", e.what(), exit_schema);
    }

    units_given_ = app.count("--units") > 0;
    mode_given_ = app.count("--mode") > 0;
    c_given_ = app.count("--c") > 0;
    gauge_given_ = app.count("--gauge-s") > 0;

    try
    {
        finalize_config();
        if (*constants) return cmd_constants();
        if (*boost) return cmd_boost();
        if (*add_vel) return cmd_add_vel();
        if (*momentum) return cmd_momentum();
        if (*dispersion) return cmd_dispersion();
        if (*wave) return cmd_wave_check();
        if (*check) return cmd_check();
        if (*table) return cmd_table();
    }
    catch (SchemaError const& e)
    {
        return report_error("schema", e.what(), exit_schema);
    }
    catch (Error const& e)
    {
        bool const singular = e.code() == ErrorCode::BranchPoint
                              || e.code() == ErrorCode::VelocityPole;
        return report_error(to_string(e.code()), e.what(),
                            singular ? exit_branch_point : exit_schema);
    }
    catch (Json::exception const& e)
    {
        return report_error("schema", e.what(), exit_schema);
    }
    return exit_schema;
}

}  // namespace ccov::cli
