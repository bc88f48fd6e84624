// bht — power of binary hypothesis tests between finite discrete
// distributions, by three mutually verifying routes, plus the Renyi bound,
// the Gaussian approximation sandwich and the large-deviation exponents.
//
// Subcommands: exact | verify | renyi | gaussian | exponent
// Exit codes:  0 ok, 1 domain error, 2 I/O or parse error, 3 verification
// failure.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bht/core.hpp"
#include "bht/errors.hpp"
#include "bht/gaussian.hpp"
#include "bht/io.hpp"
#include "bht/largedev.hpp"
#include "bht/logsum.hpp"
#include "bht/np_exact.hpp"
#include "bht/renyi.hpp"
#include "bht/variational.hpp"

namespace {

constexpr double kLn2 = 0.6931471805599453;

using Cell = std::variant<double, std::string, bool>;

struct Column {
    std::string name;
    bool nats = false;  // value is in nats; --bits divides by ln 2
};

struct Table {
    std::vector<Column> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double present(double v, bool nats, bool bits) { return nats && bits ? v / kLn2 : v; }

void write_csv(const Table& t, std::ostream& out, bool bits) {
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        out << (c ? "," : "") << t.columns[c].name;
    out << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ",";
            if (const double* d = std::get_if<double>(&row[c]))
                out << format_double(present(*d, t.columns[c].nats, bits));
            else if (const bool* b = std::get_if<bool>(&row[c]))
                out << (*b ? "true" : "false");
            else
                out << std::get<std::string>(row[c]);
        }
        out << "\n";
    }
}

void write_json(const Table& t, std::ostream& out, bool bits) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t c = 0; c < row.size(); ++c) {
            const std::string& name = t.columns[c].name;
            if (const double* d = std::get_if<double>(&row[c]))
                obj[name] = present(*d, t.columns[c].nats, bits);
            else if (const bool* b = std::get_if<bool>(&row[c]))
                obj[name] = *b;
            else
                obj[name] = std::get<std::string>(row[c]);
        }
        rows.push_back(std::move(obj));
    }
    out << rows.dump(2) << "\n";
}

void emit(const Table& t, const std::string& output, const std::string& format, bool bits) {
    std::ostringstream buf;
    if (format == "json")
        write_json(t, buf, bits);
    else
        write_csv(t, buf, bits);
    if (output.empty()) {
        std::cout << buf.str();
    } else {
        std::ofstream out(output, std::ios::binary);
        if (!out) throw bht::ParseError("cannot open output file '" + output + "'");
        out << buf.str();
    }
}

std::vector<double> parse_list(const std::string& s, const char* what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw bht::ParseError(std::string("bad ") + what + " list entry '" + item + "'");
        }
    }
    if (out.empty()) throw bht::ParseError(std::string("empty ") + what + " list");
    return out;
}

std::vector<long> parse_long_list(const std::string& s, const char* what) {
    std::vector<long> out;
    for (double v : parse_list(s, what)) {
        if (v < 1 || v != std::floor(v))
            throw bht::ParseError(std::string(what) + " entries must be positive integers");
        out.push_back(static_cast<long>(v));
    }
    return out;
}

std::size_t atom_cap_from_env() {
    if (const char* env = std::getenv("BHT_ATOM_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        throw bht::ParseError("BHT_ATOM_CAP must be a positive integer");
    }
    return bht::kDefaultAtomCap;
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

Table run_exact(const bht::DiscretePair& pair, const std::vector<double>& eps_grid) {
    bht::LLRSpectrum spectrum = bht::llr_spectrum(pair);
    Table t;
    t.columns = {{"epsilon"}, {"beta"}, {"log_beta", true}, {"lambda"}, {"delta"}};
    for (double eps : eps_grid) {
        bht::PowerResult pw = bht::beta_exact_rejection(spectrum, eps);
        t.rows.push_back({eps, pw.beta, pw.log_beta, pw.test.lambda, pw.test.delta});
    }
    return t;
}

Table run_verify(const bht::DiscretePair& pair, const std::vector<double>& eps_grid,
                 bool corrupt, double& worst) {
    bht::LLRSpectrum spectrum = bht::llr_spectrum(pair);
    Table t;
    t.columns = {{"epsilon"},     {"beta_exact"},  {"beta_lambda"}, {"beta_cdf"},
                 {"lambda_star"}, {"r_star", true}, {"lambda_cond"}, {"r_cond"},
                 {"discrepancy"}};
    worst = 0.0;
    for (double eps : eps_grid) {
        double alpha = 1.0 - eps;
        bht::PowerResult exact = bht::beta_exact_rejection(spectrum, eps);
        bht::PowerResult via_lambda = bht::beta_variational_lambda(spectrum, alpha);
        bht::PowerResult via_cdf = bht::beta_variational_cdf(spectrum, eps);
        double beta_lambda = via_lambda.beta + (corrupt ? 1e-6 : 0.0);
        // the bracketing checks compare exact atom-mass sums; at the very
        // top of the range the stored total can sit one ulp below the
        // requested level, which is rounding, not a broken condition
        double total = spectrum.p_inf + spectrum.finite_p_mass();
        bool lambda_ok =
            bht::check_lambda_optimality(spectrum, via_lambda.test.lambda, alpha) ||
            alpha >= total;
        bool r_ok = bht::check_r_optimality(spectrum, via_cdf.test.z_boundary, eps) ||
                    via_cdf.test.z_boundary == bht::kPosInf ||
                    eps >= spectrum.finite_p_mass();
        double disc = std::max(std::abs(exact.beta - beta_lambda),
                               std::abs(exact.beta - via_cdf.beta));
        worst = std::max(worst, disc);
        t.rows.push_back({eps, exact.beta, beta_lambda, via_cdf.beta, via_lambda.test.lambda,
                          via_cdf.test.z_boundary, lambda_ok, r_ok, disc});
    }
    return t;
}

Table run_renyi(const bht::DiscretePair& pair, const std::vector<double>& r_grid) {
    bht::LLRSpectrum spectrum = bht::llr_spectrum(pair);
    Table t;
    t.columns = {{"r", true}, {"bound_nats", true}, {"s_star"}, {"exact_log_beta", true},
                 {"dominates"}};
    for (double r : r_grid) {
        bht::RenyiBound bound = bht::beta_bound(pair, r);
        double log_beta = bht::beta_exact_rejection(spectrum, std::exp(-r)).log_beta;
        bool dominates = bound.bound >= log_beta - 1e-9;
        t.rows.push_back({r, bound.bound, bound.s_star, log_beta, dominates});
    }
    return t;
}

Table run_gaussian(const bht::DiscretePair& pair, const std::vector<long>& n_list,
                   const std::vector<double>& eps_grid, std::size_t cap) {
    bht::LLRSpectrum base = bht::llr_spectrum(pair);
    bht::Moments m = bht::moments(base);
    Table t;
    t.columns = {{"n"},           {"epsilon"},    {"beta_exact"}, {"gaussian_beta"},
                 {"be_gap"},      {"lower"},      {"upper"},      {"sup_gap_dl"},
                 {"sup_gap_dh"},  {"contained"},  {"degenerate"}};
    for (long n : n_list) {
        bht::LLRSpectrum product = bht::iid_product(base, n, cap);
        double gap = bht::berry_esseen_gap(base, n);
        bht::GaussianModel model{m.d * n, m.v * n, gap, gap};
        auto [dl, dh] = bht::sup_gap(bht::cdf(product), model);
        for (double eps : eps_grid) {
            bht::PowerResult exact = bht::beta_exact_rejection(product, eps);
            double approx = bht::gaussian_beta(model, eps).beta;
            bht::SandwichResult sw = bht::sandwich(model, eps);
            bool contained = sw.lower <= exact.beta && exact.beta <= sw.upper;
            t.rows.push_back({static_cast<double>(n), eps, exact.beta, approx, gap, sw.lower,
                              sw.upper, dl, dh, contained, sw.upper_degenerate});
        }
    }
    return t;
}

Table run_exponent(const bht::DiscretePair& pair, const std::vector<double>& r_grid,
                   const std::vector<long>& n_list, const std::string& method,
                   std::size_t cap) {
    bht::LLRSpectrum base = bht::llr_spectrum(pair);
    bht::RateModel rate(base);
    Table t;
    t.columns = {{"r", true},        {"n"},
                 {"en_exact", true}, {"e2n_quadrature", true},
                 {"e2n_laplace", true}, {"r_star", true},
                 {"delta_l", true},  {"delta_h", true},
                 {"status"}};
    const double nan = std::nan("");
    for (long n : n_list) {
        std::optional<bht::LLRSpectrum> product;
        double delta_l = nan, delta_h = nan;
        std::string status = "ok";
        try {
            product = bht::iid_product(base, n, cap);
            auto deltas = bht::measured_deltas(*product, rate, n);
            delta_l = deltas.first;
            delta_h = deltas.second;
        } catch (const bht::AtomExplosion&) {
            status = "atom_cap_exceeded";
        }
        for (double r : r_grid) {
            double en = nan, e2q = nan, e2l = nan, r_star = nan;
            std::string row_status = status;
            try {
                r_star = bht::optimal_R(rate, r);
                if (method != "laplace")
                    e2q = bht::E2n(rate, r, n, bht::ExponentMethod::quadrature).e2n;
                if (method != "quadrature")
                    e2l = bht::E2n(rate, r, n, bht::ExponentMethod::laplace).e2n;
                if (product) {
                    double eps = std::exp(-static_cast<double>(n) * r);
                    en = -bht::beta_exact_rejection(*product, eps).log_beta /
                         static_cast<double>(n);
                }
            } catch (const bht::OutOfRange& e) {
                row_status = std::string("out_of_range: ") + e.what();
            }
            t.rows.push_back({r, static_cast<double>(n), en, e2q, e2l, r_star, delta_l,
                              delta_h, row_status});
        }
    }
    return t;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"power of binary hypothesis tests between finite discrete distributions"};
    app.require_subcommand(1);

    struct Common {
        std::string input;
        std::string output;
        std::string format = "csv";
        bool bits = false;
    };

    auto add_common = [](CLI::App* cmd, Common& c) {
        cmd->add_option("--input", c.input, "distribution pair file (JSON or CSV)")
            ->required();
        cmd->add_option("--output", c.output, "output path (default: stdout)");
        cmd->add_option("--format", c.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_flag("--bits", c.bits, "present nat-valued columns in bits");
    };

    Common c_exact, c_verify, c_renyi, c_gauss, c_exp;
    std::string eps_exact, eps_verify, eps_gauss;
    std::string r_renyi = "0.1,0.5,1,2", r_exp = "0.02,0.05,0.1";
    std::string n_gauss = "16,64,256", n_exp = "64,256,1024";
    std::string method = "both";
    bool corrupt = false;

    CLI::App* exact = app.add_subcommand("exact", "exact power over an epsilon grid");
    add_common(exact, c_exact);
    exact->add_option("--epsilon", eps_exact, "comma-separated type-I budgets");

    CLI::App* verify = app.add_subcommand(
        "verify", "cross-check the three routes; exit 3 on discrepancy > 1e-9");
    add_common(verify, c_verify);
    verify->add_option("--epsilon", eps_verify, "comma-separated type-I budgets");
    verify->add_flag("--corrupt-route", corrupt)->group("");  // test hook, hidden

    CLI::App* renyi = app.add_subcommand("renyi", "Renyi-divergence bound over an r grid");
    add_common(renyi, c_renyi);
    renyi->add_option("--r", r_renyi, "comma-separated exponent budgets, nats");

    CLI::App* gauss = app.add_subcommand(
        "gaussian", "Gaussian approximation with Berry-Esseen sandwich on product spectra");
    add_common(gauss, c_gauss);
    gauss->add_option("--epsilon", eps_gauss, "comma-separated type-I budgets");
    gauss->add_option("--n", n_gauss, "comma-separated block lengths");

    CLI::App* expo = app.add_subcommand("exponent", "large-deviation exponents");
    add_common(expo, c_exp);
    expo->add_option("--r", r_exp, "comma-separated exponent budgets, nats");
    expo->add_option("--n", n_exp, "comma-separated block lengths");
    expo->add_option("--method", method, "quadrature, laplace or both")
        ->check(CLI::IsMember({"quadrature", "laplace", "both"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    auto default_grid_33 = []() {
        std::string s;
        for (int k = 0; k <= 32; ++k) s += (k ? "," : "") + format_double(k / 32.0);
        return s;
    };

    try {
        std::size_t cap = atom_cap_from_env();
        if (exact->parsed()) {
            auto pair = bht::load_pair(c_exact.input);
            auto grid = parse_list(eps_exact.empty() ? default_grid_33() : eps_exact,
                                   "epsilon");
            emit(run_exact(pair, grid), c_exact.output, c_exact.format, c_exact.bits);
        } else if (verify->parsed()) {
            auto pair = bht::load_pair(c_verify.input);
            auto grid = parse_list(eps_verify.empty() ? default_grid_33() : eps_verify,
                                   "epsilon");
            double worst = 0.0;
            emit(run_verify(pair, grid, corrupt, worst), c_verify.output, c_verify.format,
                 c_verify.bits);
            if (worst > 1e-9) {
                std::cerr << "verification failed: max discrepancy " << format_double(worst)
                          << "\n";
                return 3;
            }
        } else if (renyi->parsed()) {
            auto pair = bht::load_pair(c_renyi.input);
            emit(run_renyi(pair, parse_list(r_renyi, "r")), c_renyi.output, c_renyi.format,
                 c_renyi.bits);
        } else if (gauss->parsed()) {
            auto pair = bht::load_pair(c_gauss.input);
            auto grid = parse_list(eps_gauss.empty() ? "0.1,0.25,0.5" : eps_gauss, "epsilon");
            emit(run_gaussian(pair, parse_long_list(n_gauss, "n"), grid, cap), c_gauss.output,
                 c_gauss.format, c_gauss.bits);
        } else if (expo->parsed()) {
            auto pair = bht::load_pair(c_exp.input);
            emit(run_exponent(pair, parse_list(r_exp, "r"), parse_long_list(n_exp, "n"),
                              method, cap),
                 c_exp.output, c_exp.format, c_exp.bits);
        }
    } catch (const bht::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const bht::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
