// nilchar: character tables and monomial decompositions for groups 1+A.
//
// exit codes: 0 every check passed, 1 something was falsified, 2 bad usage.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "nilchar/nilchar.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options
{
    std::uint64_t cap = std::uint64_t{1} << 16;
    std::string out;
    std::string format = "json";
    std::uint64_t seed = 0;
    bool no_gutkin = false;
};

// ul(3,2) -> ul_3_2, a/b/c.json -> c
std::string slug(const std::string& target)
{
    std::string base = target;
    if (auto p = base.find("file("); p == 0)
        base = base.substr(5, base.size() - 6);
    if (base.size() > 5 && base.substr(base.size() - 5) == ".json")
        base = fs::path(base).stem().string();
    std::string s;
    for (char c : base) {
        if (std::isalnum(static_cast<unsigned char>(c)))
            s += c;
        else if (!s.empty() && s.back() != '_')
            s += '_';
    }
    while (!s.empty() && s.back() == '_')
        s.pop_back();
    return s.empty() ? "algebra" : s;
}

void emit(const Options& o, const std::string& stem, const std::string& ext, const std::string& text)
{
    if (o.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n')
            std::cout << '\n';
        return;
    }
    fs::create_directories(o.out);
    const auto path = fs::path(o.out) / (stem + "." + ext);
    std::ofstream f(path);
    if (!f)
        throw nilchar::ParseError("cannot write '" + path.string() + "'");
    f << text;
    if (!text.empty() && text.back() != '\n')
        f << '\n';
    std::cout << path.string() << '\n';
}

void require_json(const Options& o, const std::string& cmd)
{
    if (o.format != "json")
        throw nilchar::InvalidArgument(cmd + " only writes json");
}

nilchar::UnitGroupPtr group_of(const std::string& target, const Options& o)
{
    return nilchar::make_unit_group(nilchar::resolve_target(target), o.cap);
}

json algebra_summary(const nilchar::FqAlgebra& a)
{
    json powers = json::array();
    for (int m = 1; m <= a.nilpotence_class(); ++m)
        powers.push_back(nilchar::power_ideal(a, m).dim());
    std::uint64_t order = 1;
    for (std::size_t i = 0; i < a.dim(); ++i)
        order *= a.ring().order();
    return {{"q", a.ring().order()}, {"dim", a.dim()}, {"class", a.nilpotence_class()},
            {"group_order", order}, {"power_dims", powers}};
}

int cmd_catalog(const Options& o, const std::vector<std::string>& files)
{
    json rows = json::array();
    for (const auto& e : nilchar::builtin_catalog()) {
        auto j = algebra_summary(e.build());
        j["name"] = e.name;
        if (e.expected_degrees)
            j["expected_degrees"] = nilchar::detail::degree_counts_json(*e.expected_degrees);
        rows.push_back(j);
    }
    for (const auto& f : files) {
        auto j = algebra_summary(nilchar::load_algebra_file(f));
        j["name"] = "file(" + f + ")";
        rows.push_back(j);
    }
    if (o.format == "csv") {
        std::ostringstream s;
        s << "name,q,dim,class,group_order\n";
        for (const auto& r : rows)
            s << r["name"].get<std::string>() << "," << r["q"] << "," << r["dim"] << "," << r["class"] << ","
              << r["group_order"] << "\n";
        emit(o, "catalog", "csv", s.str());
    } else {
        emit(o, "catalog", "json", rows.dump(2));
    }
    return 0;
}

int cmd_show(const Options& o, const std::string& target)
{
    require_json(o, "show");
    const auto a = nilchar::resolve_target(target);
    auto j = algebra_summary(a);
    j["target"] = target;
    j["algebra"] = nilchar::algebra_to_json(a);
    emit(o, slug(target) + ".algebra", "json", j.dump(2));
    return 0;
}

int cmd_chartable(const Options& o, const std::string& target)
{
    const auto g = group_of(target, o);
    const auto t = nilchar::character_table(nilchar::Subgroup::whole(g));
    const auto stem = slug(target) + ".table";
    if (!o.out.empty()) {
        emit(o, stem, "json", t.to_json().dump(2));
        emit(o, stem, "csv", t.to_csv());
    } else if (o.format == "csv") {
        emit(o, stem, "csv", t.to_csv());
    } else {
        emit(o, stem, "json", t.to_json().dump(2));
    }
    return 0;
}

int cmd_decompose(const Options& o, const std::string& target, std::optional<std::size_t> which)
{
    require_json(o, "decompose");
    const auto g = group_of(target, o);
    nilchar::GutkinEngine engine(g);
    const auto& table = *engine.top().table;
    json out = json::array();
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (which && *which != i)
            continue;
        auto j = nilchar::datum_to_json(engine.decompose(table[i]), g->field());
        j["character"] = i;
        out.push_back(j);
    }
    if (which && out.empty())
        throw nilchar::InvalidArgument("no character " + std::to_string(*which) + " (table has " +
                                       std::to_string(table.size()) + ")");
    emit(o, slug(target) + ".decompose", "json", out.dump(2));
    return 0;
}

std::vector<nilchar::SuiteResult> run_suites(const std::string& target, const std::string& suite, const Options& o,
                                             const std::optional<std::map<std::uint64_t, std::size_t>>& expected)
{
    const auto g = group_of(target, o);
    std::vector<nilchar::SuiteResult> rs;
    const bool all = suite == "all";
    if (all)
        rs.push_back(nilchar::table_suite(g, expected));
    if (all || suite == "gutkin") {
        if (o.no_gutkin)
            rs.push_back({"gutkin", false, true, {{"reason", "disabled by --no-gutkin"}}});
        else
            rs.push_back(nilchar::gutkin_suite(g));
    }
    if (all || suite == "commutators")
        rs.push_back(nilchar::commutator_suite(g, o.cap));
    if (all || suite == "identities") {
        rs.push_back(nilchar::symbolic_suite());
        rs.push_back(nilchar::pairing_suite(g, o.cap));
    }
    if (all || suite == "polarize") {
        if (o.no_gutkin)
            rs.push_back({"polarize", false, true, {{"reason", "disabled by --no-gutkin"}}});
        else
            rs.push_back(nilchar::polarize_suite(g->algebra(), o.seed));
    }
    return rs;
}

int cmd_verify(const Options& o, const std::string& target, const std::string& suite)
{
    if (suite == "gutkin" && o.no_gutkin)
        throw nilchar::GutkinDisabled("--suite gutkin with --no-gutkin");
    if (suite == "polarize" && o.no_gutkin)
        throw nilchar::GutkinDisabled("--suite polarize with --no-gutkin");

    std::vector<std::pair<std::string, std::optional<std::map<std::uint64_t, std::size_t>>>> targets;
    if (target == "catalog")
        for (const auto& e : nilchar::builtin_catalog())
            targets.emplace_back(e.name, e.expected_degrees);
    else
        targets.emplace_back(target, std::nullopt);

    bool ok = true;
    json reports = json::array();
    std::ostringstream csv;
    csv << "target,suite,status\n";
    for (const auto& [t, expected] : targets) {
        json suites = json::array();
        bool tok = true;
        for (const auto& r : run_suites(t, suite, o, expected)) {
            tok = tok && (r.passed || r.skipped);
            suites.push_back(r.to_json());
            csv << t << "," << r.name << "," << (r.skipped ? "skipped" : r.passed ? "pass" : "fail") << "\n";
        }
        ok = ok && tok;
        reports.push_back({{"target", t}, {"status", tok ? "pass" : "fail"}, {"suites", suites}});
    }
    const auto stem = slug(target) + ".verify";
    if (o.format == "csv")
        emit(o, stem, "csv", csv.str());
    else
        emit(o, stem, "json",
             json{{"suite", suite}, {"status", ok ? "pass" : "fail"}, {"targets", reports}}.dump(2));
    return ok ? 0 : 1;
}

int cmd_halasi(const Options& o, unsigned q, std::size_t gens, int n, std::optional<int> k)
{
    json rows = json::array();
    std::ostringstream csv;
    csv << "q,generators,n,k,lhs_order,rhs_order,contains,equal\n";
    bool contains = true;
    for (int kk = k.value_or(2); kk <= (k ? *k : n); ++kk) {
        const auto r = nilchar::halasi_explore(q, gens, n, kk, o.cap);
        rows.push_back(r.to_json());
        contains = contains && r.contains;
        csv << q << "," << gens << "," << n << "," << kk << "," << r.lhs_order << "," << r.rhs_order << ","
            << r.contains << "," << r.equal << "\n";
    }
    const auto stem = "halasi_" + std::to_string(q) + "_" + std::to_string(gens) + "_" + std::to_string(n);
    if (o.format == "csv")
        emit(o, stem, "csv", csv.str());
    else
        emit(o, stem, "json", rows.dump(2));
    return contains ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"character tables and monomial decompositions for groups 1+A"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--cap", o.cap, "largest group order to enumerate")->check(CLI::PositiveNumber);
    app.add_option("--out", o.out, "write results into this directory");
    app.add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", o.seed, "seed for random functionals");
    app.add_flag("--no-gutkin", o.no_gutkin, "switch the monomial decomposition off");

    std::vector<std::string> files;
    auto* catalog = app.add_subcommand("catalog", "list the built-in algebras and any given files");
    catalog->add_option("files", files, "algebra json files");

    std::string target;
    auto* show = app.add_subcommand("show", "print an algebra with its invariants");
    show->add_option("target", target, "ul(n,q), free(q,g,n) or a json file")->required();

    auto* chartable = app.add_subcommand("chartable", "character table of 1+A");
    chartable->add_option("target", target)->required();

    std::optional<std::size_t> which;
    auto* decompose = app.add_subcommand("decompose", "chi = Ind alpha for every irreducible");
    decompose->add_option("target", target)->required();
    decompose->add_option("--character", which, "only this row of the table");

    std::string suite = "all";
    auto* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("target", target, "an algebra, or 'catalog' for every built-in")->required();
    verify->add_option("--suite", suite)->check(CLI::IsMember({"gutkin", "commutators", "identities", "polarize", "all"}));

    unsigned q = 2;
    std::size_t gens = 2;
    int n = 4;
    std::optional<int> k;
    auto* halasi = app.add_subcommand("halasi-explore", "(1+J,1+J) meet 1+J^k against (1+J,1+J^{k-1})");
    halasi->add_option("--q", q)->required();
    halasi->add_option("--gens", gens)->required();
    halasi->add_option("--n", n)->required();
    halasi->add_option("--k", k, "one k instead of 2..n");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        nilchar::set_gutkin_enabled(!o.no_gutkin);
        if (*catalog)
            return cmd_catalog(o, files);
        if (*show)
            return cmd_show(o, target);
        if (*chartable)
            return cmd_chartable(o, target);
        if (*decompose)
            return cmd_decompose(o, target, which);
        if (*verify)
            return cmd_verify(o, target, suite);
        if (*halasi)
            return cmd_halasi(o, q, gens, n, k);
    } catch (const nilchar::VerificationFailed& e) {
        std::cerr << "nilchar: " << e.what() << '\n';
        return 1;
    } catch (const nilchar::UsageError& e) {
        std::cerr << "nilchar: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "nilchar: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
