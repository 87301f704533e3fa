// Command line front end: every subcommand prints one JSON document to
// standard output. Exit codes: 0 success, 1 usage error, 2 computation error.

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "freemagma/assoc.hpp"
#include "freemagma/calculus.hpp"
#include "freemagma/constants.hpp"
#include "freemagma/hausdorff.hpp"
#include "freemagma/hopf.hpp"
#include "freemagma/parse.hpp"
#include "freemagma/serialize.hpp"

namespace {

using namespace freemagma;

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::vector<Variable> parse_var_list(const std::string& names) {
    std::vector<Variable> out;
    std::string token;
    auto flush = [&] {
        if (token.empty()) return;
        if (token == "x")
            out.push_back(Variable(1));
        else if (token == "y")
            out.push_back(Variable(2));
        else if (token.size() > 1 && token[0] == 'x')
            out.push_back(Variable(std::stoi(token.substr(token[1] == '_' ? 2 : 1))));
        else
            throw std::invalid_argument("unknown variable '" + token + "'");
        token.clear();
    };
    for (char c : names) {
        if (c == ',' || c == ' ')
            flush();
        else
            token.push_back(c);
    }
    flush();
    if (out.empty()) throw std::invalid_argument("empty variable list");
    return out;
}

Json taylor_coeff_entry(const Json& index, const Poly& a) {
    Json entry{{"index", index}};
    Json pj = poly_to_json(a);
    entry["terms"] = pj["terms"];
    return entry;
}

int run_hausdorff(int degree) {
    HausdorffTable table(degree);
    Json out = Json::array();
    for (int n = 1; n <= degree; ++n) {
        Poly hn = table.component(n);
        out.push_back(poly_to_json(hn, is_primitive(hn)));
    }
    emit(out);
    return 0;
}

int run_taylor(const std::string& expr, const std::string& var, bool total,
               const std::string& vars) {
    Poly f = parse_poly(expr);
    if (total) {
        std::vector<Variable> order = parse_var_list(vars);
        TaylorExpansionTotal t = taylor_total(f, order);
        Json names = Json::array();
        for (Variable v : order) names.push_back(variable_name(v));
        Json coeffs = Json::array();
        for (const auto& [j, a] : t.coeffs()) coeffs.push_back(taylor_coeff_entry(Json(j), a));
        emit(Json{{"variables", std::move(names)}, {"coefficients", std::move(coeffs)}});
        return 0;
    }
    Variable v = parse_var_list(var).at(0);
    TaylorExpansion1 t = taylor1(f, v);
    Json coeffs = Json::array();
    for (const auto& [j, a] : t.coeffs()) coeffs.push_back(taylor_coeff_entry(Json(j), a));
    emit(Json{{"variable", variable_name(v)}, {"coefficients", std::move(coeffs)}});
    return 0;
}

int run_constants_basis(int degree, int nvars) {
    Json out = Json::array();
    if (nvars == 1) {
        for (const Poly& p : constants_basis(degree)) out.push_back(poly_to_json(p));
    } else {
        const Variable x(1), y(2);
        for (const Monomial& s : gamma_two_var(degree))
            out.push_back(poly_to_json(phi_total(Poly(s), {x, y})));
    }
    emit(out);
    return 0;
}

int run_generators(int max_degree, bool do_primitivize) {
    GeneratorTable table = free_generators(max_degree);
    if (do_primitivize)
        for (int r = 3; r <= max_degree; ++r) table = primitivize(table, r);
    Json out = Json::array();
    for (const Generator& g : table.entries()) out.push_back(generator_to_json(g));
    emit(out);
    return 0;
}

int run_primitive_check(const std::string& expr) {
    Poly f = parse_poly(expr);
    bool prim = is_primitive(f);
    Json out{{"primitive", prim}};
    if (!prim) out["deviation"] = tensor_to_json(coaddition_deviation(f));
    emit(out);
    return 0;
}

int run_bch_crosscheck(int degree) {
    HausdorffTable h(degree);
    AssocSeries classical = assoc_bch(degree);
    std::map<Word, Rat, WordLess> sums;
    for (int n = 1; n <= degree; ++n)
        for (const Monomial& tau : enumerate(n, {Variable(1), Variable(2)}))
            sums[foliage(tau)] += h.coeff(tau);
    Json rows = Json::array();
    bool all_match = true;
    for (const auto& [w, total] : sums) {
        Rat expect = classical.coeff(w);
        bool match = total == expect;
        all_match = all_match && match;
        if (total == 0 && expect == 0) continue;
        rows.push_back(Json{{"word", word_to_string(w)},
                            {"foliage_sum", to_string(total)},
                            {"classical", to_string(expect)},
                            {"match", match}});
    }
    emit(Json{{"degree", degree}, {"rows", std::move(rows)}, {"all_match", all_match}});
    return all_match ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact symbolic computation in the free non-associative algebra"};
    app.require_subcommand(1);

    int degree = 3;
    int max_degree = 6;
    int nvars = 1;
    bool total = false;
    bool do_primitivize = false;
    std::string expr, var = "x", vars = "x,y";

    CLI::App* c_hausdorff = app.add_subcommand("hausdorff", "Hausdorff series components");
    c_hausdorff->add_option("--degree", degree, "highest component")->required();

    CLI::App* c_exp = app.add_subcommand("exp", "exponential series coefficients");
    c_exp->add_option("--degree", degree, "truncation degree")->required();

    CLI::App* c_log = app.add_subcommand("log", "logarithm series coefficients");
    c_log->add_option("--degree", degree, "truncation degree")->required();

    CLI::App* c_taylor = app.add_subcommand("taylor", "Taylor expansion of an expression");
    c_taylor->add_option("expr", expr, "polynomial expression")->required();
    c_taylor->add_option("--var", var, "expansion variable (default x)");
    c_taylor->add_flag("--total", total, "total expansion over --vars");
    c_taylor->add_option("--vars", vars, "comma separated variable order (default x,y)");

    CLI::App* c_basis = app.add_subcommand("constants-basis", "basis of the constants algebra");
    c_basis->add_option("--degree", degree, "homogeneous degree")->required();
    c_basis->add_option("--vars", nvars, "number of variables (1 or 2)")->check(CLI::Range(1, 2));

    CLI::App* c_gens = app.add_subcommand("generators", "free generators of the constants");
    c_gens->add_option("--max-degree", max_degree, "largest generator degree")->required();
    c_gens->add_flag("--primitivize", do_primitivize, "correct generators to primitives");

    CLI::App* c_prim = app.add_subcommand("primitive-check", "test primitivity");
    c_prim->add_option("expr", expr, "polynomial expression")->required();

    CLI::App* c_antipode = app.add_subcommand("antipode", "left antipode of an expression");
    c_antipode->add_option("expr", expr, "polynomial expression")->required();

    CLI::App* c_delta = app.add_subcommand("delta", "co-addition of an expression");
    c_delta->add_option("expr", expr, "polynomial expression")->required();

    CLI::App* c_bch =
        app.add_subcommand("bch-crosscheck", "foliage sums against the classical series");
    c_bch->add_option("--degree", degree, "word length cap")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // help/version exit 0, usage errors exit 1
    }

    try {
        if (c_hausdorff->parsed()) return run_hausdorff(degree);
        if (c_exp->parsed()) {
            emit(coeff_table_to_json(ExpTable(degree).table(), degree));
            return 0;
        }
        if (c_log->parsed()) {
            emit(coeff_table_to_json(log_coeffs(degree), degree));
            return 0;
        }
        if (c_taylor->parsed()) return run_taylor(expr, var, total, vars);
        if (c_basis->parsed()) return run_constants_basis(degree, nvars);
        if (c_gens->parsed()) return run_generators(max_degree, do_primitivize);
        if (c_prim->parsed()) return run_primitive_check(expr);
        if (c_antipode->parsed()) {
            emit(poly_to_json(antipode(parse_poly(expr))));
            return 0;
        }
        if (c_delta->parsed()) {
            emit(tensor_to_json(delta(parse_poly(expr))));
            return 0;
        }
        if (c_bch->parsed()) return run_bch_crosscheck(degree);
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
