#pragma once

// Command-line front end: formula, coeff, eval, verify.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
// 3 numeric precondition failure (f'(t0) = 0, F_y = 0, point off the curve).

#include <nthderiv/nthderiv.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace nthderiv::cli {

enum ExitCode : int { ok = 0, verification_failed = 1, usage_error = 2, numeric_error = 3 };

inline constexpr int default_enum_cap = 12;
inline constexpr int default_recur_cap = 30;

/// NTHDERIV_ENUM_CAP / NTHDERIV_RECUR_CAP override the default caps.
inline int cap_from_env(const char* name, int fallback)
{
    const char* v = std::getenv(name);
    if (v == nullptr || *v == '\0') {
        return fallback;
    }
    try {
        return detail::parse_int(v, name);
    } catch (const InvalidArgument&) {
        return fallback;
    }
}

inline std::string format_real(double v)
{
    std::ostringstream os;
    os.precision(15);
    os << v;
    return os.str();
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgument("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class App {
public:
    App(std::ostream& out, std::ostream& err) : out_(out), err_(err) { build(); }

    int run(std::vector<std::string> args)
    {
        // CLI11 wants the arguments reversed, without the program name
        std::reverse(args.begin(), args.end());
        try {
            app_.parse(args);
        } catch (const CLI::CallForHelp&) {
            out_ << app_.help();
            return ok;
        } catch (const CLI::ParseError& e) {
            err_ << "error: " << e.what() << '\n';
            return usage_error;
        }
        try {
            return dispatch();
        } catch (const DivisionByZero& e) {
            err_ << "error: " << e.what() << '\n';
            return numeric_error;
        } catch (const NotOnCurve& e) {
            err_ << "error: " << e.what() << '\n';
            return numeric_error;
        } catch (const InvalidArgument& e) {
            err_ << "error: " << e.what() << '\n';
            return usage_error;
        }
    }

private:
    void build()
    {
        app_.description("Closed-form n-th derivatives of parametric, implicit and inverse functions");
        app_.require_subcommand(1);

        formula_ = app_.add_subcommand("formula", "Print d^n y/dx^n");
        formula_->add_option("kind", kind_, "parametric, implicit or inverse")
            ->required()
            ->check(CLI::IsMember({"parametric", "implicit", "inverse"}));
        formula_->add_option("n", n_, "Derivative order")->required();
        formula_->add_option("-f,--format", format_, "text, latex or json")
            ->check(CLI::IsMember({"text", "latex", "json"}));
        add_method(formula_);

        coeff_ = app_.add_subcommand("coeff", "Print the coefficient layer P_{n,k} or I_{n,k} and its partition count");
        coeff_->add_option("kind", kind_, "parametric or implicit")
            ->required()
            ->check(CLI::IsMember({"parametric", "implicit"}));
        coeff_->add_option("n", n_, "Derivative order")->required();
        coeff_->add_option("k", k_, "Layer index")->required();
        add_method(coeff_);

        eval_ = app_.add_subcommand("eval", "Evaluate d^n y/dx^n on a derivative table");
        eval_->add_option("kind", kind_, "parametric, implicit or inverse")
            ->check(CLI::IsMember({"parametric", "implicit", "inverse"}));
        eval_->add_option("n", n_, "Derivative order");
        eval_->add_option("-t,--table", table_path_, "Table file (key=value lines)");
        eval_->add_option("--formula", formula_path_, "Evaluate a JSON formula written by `formula -f json`");
        eval_->add_option("--t0", inline_["t0"], "Parametric point");
        eval_->add_option("--f", inline_["f"], "f', f'', ... comma separated");
        eval_->add_option("--g", inline_["g"], "g', g'', ... comma separated");
        eval_->add_option("--x0", inline_["x0"], "Implicit point x");
        eval_->add_option("--y0", inline_["y0"], "Implicit point y");
        eval_->add_option("--partial", partials_, "Partial derivative a_b=value (repeatable)");
        add_method(eval_);

        verify_ = app_.add_subcommand("verify", "Run the self-check suites");
        verify_->add_option("--max-n-parametric", verify_opt_.max_n_parametric, "Largest parametric order")
            ->check(CLI::Range(1, 9));
        verify_->add_option("--max-n-implicit", verify_opt_.max_n_implicit, "Largest implicit order")
            ->check(CLI::Range(1, 7));
        verify_->add_option("--seed", verify_opt_.seed, "Seed of the random numeric tables");
        verify_->add_option("--tables", verify_opt_.numeric_tables, "Random tables per numeric suite")
            ->check(CLI::NonNegativeNumber);
    }

    void add_method(CLI::App* sub)
    {
        sub->add_option("-m,--method", method_, "enum or recur")->check(CLI::IsMember({"enum", "recur"}));
        sub->add_option("--max-n", max_n_,
                        "Largest accepted n (default 12 for enum, 30 for recur; env NTHDERIV_ENUM_CAP, "
                        "NTHDERIV_RECUR_CAP)");
    }

    void check_order() const
    {
        if (n_ < 1) {
            throw InvalidArgument("n must be >= 1");
        }
        const Method m = parse_method(method_);
        const int cap = max_n_ ? *max_n_
                               : (m == Method::enumeration ? cap_from_env("NTHDERIV_ENUM_CAP", default_enum_cap)
                                                           : cap_from_env("NTHDERIV_RECUR_CAP", default_recur_cap));
        if (n_ > cap) {
            throw InvalidArgument("n = " + std::to_string(n_) + " exceeds the cap " + std::to_string(cap)
                                  + " for method " + method_ + " (raise it with --max-n)");
        }
    }

    int dispatch()
    {
        if (formula_->parsed()) {
            return run_formula();
        }
        if (coeff_->parsed()) {
            return run_coeff();
        }
        if (eval_->parsed()) {
            return run_eval();
        }
        return run_verify();
    }

    int run_formula()
    {
        check_order();
        const Method m = parse_method(method_);
        const Format fmt = parse_format(format_);
        const FormulaKind kind = parse_kind(kind_);
        if (kind == FormulaKind::implicit) {
            out_ << render(implicit_formula(n_, m), fmt) << '\n';
        } else if (kind == FormulaKind::inverse) {
            out_ << render(inverse_formula(n_, m), fmt) << '\n';
        } else {
            out_ << render(parametric_formula(n_, m), fmt) << '\n';
        }
        return ok;
    }

    int run_coeff()
    {
        check_order();
        const Method m = parse_method(method_);
        if (parse_kind(kind_) == FormulaKind::implicit) {
            const auto layer = m == Method::enumeration ? i_enum(n_, k_) : i_recur(n_, k_);
            out_ << render_layer_text(layer) << '\n';
            out_ << "partitions: " << to_decimal(count_implicit_partitions(n_, k_)) << '\n';
        } else {
            const auto layer = m == Method::enumeration ? p_enum(n_, k_) : p_recur(n_, k_);
            out_ << render_layer_text(layer) << '\n';
            out_ << "partitions: " << to_decimal(count_parametric_partitions(n_, k_)) << '\n';
        }
        return ok;
    }

    DerivativeTable load_table() const
    {
        TableBuilder builder;
        if (table_path_) {
            std::istringstream in(read_file(*table_path_));
            std::string line;
            while (std::getline(in, line)) {
                std::string_view view(line);
                if (const auto hash = view.find('#'); hash != std::string_view::npos) {
                    view = view.substr(0, hash);
                }
                view = detail::trim(view);
                if (!view.empty()) {
                    builder.set_assignment(view);
                }
            }
        }
        for (const auto& [key, value] : inline_) {
            if (!value.empty()) {
                builder.set(key, value);
            }
        }
        for (const auto& p : partials_) {
            builder.set_assignment("F_" + p);
        }
        return builder.build();
    }

    int run_eval()
    {
        const DerivativeTable table = load_table();
        std::optional<AnyFormula> formula;
        if (formula_path_) {
            formula = formula_from_json(read_file(*formula_path_));
        } else {
            if (kind_.empty() || n_ < 1) {
                throw InvalidArgument("eval needs <kind> <n> or --formula FILE");
            }
            check_order();
            const Method m = parse_method(method_);
            const FormulaKind kind = parse_kind(kind_);
            if (kind == FormulaKind::implicit) {
                formula = implicit_formula(n_, m);
            } else if (kind == FormulaKind::inverse) {
                formula = inverse_formula(n_, m);
            } else {
                formula = parametric_formula(n_, m);
            }
        }
        const double value = std::visit(
            [&](const auto& f) -> double {
                using F = std::decay_t<decltype(f)>;
                if constexpr (std::is_same_v<F, ImplicitFormula>) {
                    const auto* t = std::get_if<ImplicitTable>(&table);
                    if (t == nullptr) {
                        throw InvalidArgument("implicit formula needs an implicit table (x0, y0, F_a_b)");
                    }
                    return eval_implicit(f, *t);
                } else {
                    const auto* t = std::get_if<ParametricTable>(&table);
                    if (t == nullptr) {
                        throw InvalidArgument("parametric formula needs a parametric table (t0, f, g)");
                    }
                    return eval_parametric(f, *t);
                }
            },
            *formula);
        out_ << format_real(value) << '\n';
        return ok;
    }

    int run_verify()
    {
        const auto results = run_verification(verify_opt_);
        bool all = true;
        for (const auto& r : results) {
            out_ << (r.pass ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases)";
            if (!r.pass) {
                out_ << ": " << r.counterexample;
            }
            out_ << '\n';
            all = all && r.pass;
        }
        return all ? ok : verification_failed;
    }

    std::ostream& out_;
    std::ostream& err_;
    CLI::App app_{"nthderiv"};
    CLI::App* formula_ = nullptr;
    CLI::App* coeff_ = nullptr;
    CLI::App* eval_ = nullptr;
    CLI::App* verify_ = nullptr;

    std::string kind_;
    int n_ = 0;
    int k_ = 0;
    std::string format_ = "text";
    std::string method_ = "recur";
    std::optional<int> max_n_;
    std::optional<std::string> table_path_;
    std::optional<std::string> formula_path_;
    std::map<std::string, std::string> inline_;
    std::vector<std::string> partials_;
    VerifyOptions verify_opt_;
};

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err)
{
    App app(out, err);
    return app.run(std::move(args));
}

} // namespace nthderiv::cli
