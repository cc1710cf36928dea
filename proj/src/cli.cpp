#include "ocs/cli.hpp"
#include "ocs/errors.hpp"
#include "ocs/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

namespace ocs {

namespace {

namespace fs = std::filesystem;

struct Options {
    std::string spec;
    std::string in;
    std::string poset;
    std::string out = "-";
    std::string format = "json";
    std::string element;
    std::string variant = "left";
    std::string action = "sym";
    std::string window;
    int n = -1;
    int nmax = 8;
    int steps = 1;
    int j = 1;
    int m = 0;
    int rank = -1;
    int from = -1;
    int to = -1;
    std::size_t cap = 200000;
    bool verify = false;
    bool check_closed_form = false;
    bool no_cache = false;
};

struct Output {
    std::string text;
};

std::string dump(const json& j)
{
    return j.dump(2) + "\n";
}

// Results keyed by the canonical poset serialization, stored under OCS_CACHE.
json cached(const Options& opt, const Poset& p, const std::string& kind, const std::function<json()>& compute)
{
    const char* dir = std::getenv("OCS_CACHE");
    if (dir == nullptr || *dir == '\0' || opt.no_cache)
        return compute();
    const fs::path path = fs::path(dir) / (fnv1a_hex(canonical_poset_string(p) + "|" + kind) + "-" + kind + ".json");
    if (fs::exists(path)) {
        std::ifstream in(path);
        try {
            return json::parse(in);
        } catch (const json::exception&) {
            // unreadable entry: recompute and overwrite
        }
    }
    json result = compute();
    std::error_code ec;
    fs::create_directories(dir, ec);
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream o(tmp);
        o << result.dump();
    }
    fs::rename(tmp, path, ec);
    return result;
}

void need(const std::string& value, const char* flag)
{
    if (value.empty())
        throw CLI::RequiredError(flag);
}

void need(int value, const char* flag)
{
    if (value < 0)
        throw CLI::RequiredError(flag);
}

std::string csv_betti(const BettiTable& b)
{
    std::ostringstream s;
    s << "degree,rank\n";
    for (auto [k, v] : b.ranks)
        s << k << "," << v << "\n";
    return s.str();
}

// dowling

Output dowling_build(const Options& opt)
{
    need(opt.spec, "--spec");
    need(opt.n, "--n");
    DowlingPoset dp = build_poset(dowling_spec_from_json(read_json_file(opt.spec), opt.n), opt.cap);
    return {dump(dowling_poset_to_json(dp))};
}

Output dowling_count(const Options& opt)
{
    need(opt.spec, "--spec");
    need(opt.n, "--n");
    DowlingSpec spec = dowling_spec_from_json(read_json_file(opt.spec), opt.n);
    const Integer species = count_elements_species(spec);
    DowlingPoset dp = build_poset(spec, opt.cap);
    json out = {{"n", opt.n},
                {"enumerated", dp.elements.size()},
                {"species", species.str()},
                {"match", Integer(dp.elements.size()) == species}};
    return {dump(out)};
}

Output dowling_interval(const Options& opt)
{
    need(opt.spec, "--spec");
    need(opt.element, "--element");
    int n = opt.n;
    if (n < 0)
        n = static_cast<int>(std::count(opt.element.begin(), opt.element.end(), ':'));
    DowlingSpec spec = dowling_spec_from_json(read_json_file(opt.spec), n);
    DowlingElement e = parse_element(spec, opt.element);
    DowlingPoset dp = build_poset(spec, opt.cap);
    const int x = dp.index_of(e);
    Poset interval = lower_interval(dp.poset, x);
    auto factors = factor_interval(spec, e);
    Poset product = factor_product(factors);
    json fj = json::array();
    for (const auto& f : factors) {
        json item = {{"kind", f.kind == IntervalFactor::Kind::Partition ? "partition" : "dowling"},
                     {"ground", f.ground}};
        if (f.kind == IntervalFactor::Kind::Dowling)
            item["orbitRepresentative"] = f.orbit_representative;
        item["degree"] = f.spec.n;
        fj.push_back(item);
    }
    json out = {{"element", to_string(e)},
                {"rank", dp.poset.rank(x)},
                {"intervalSize", interval.size()},
                {"factors", fj},
                {"productSize", product.size()},
                {"isomorphic", is_isomorphic(interval, product).has_value()}};
    return {dump(out)};
}

// poset

Output poset_mobius(const Options& opt)
{
    need(opt.in, "--in");
    PosetInput pi = poset_from_json(read_json_file(opt.in));
    const Poset& p = pi.poset;
    if (opt.from >= 0 || opt.to >= 0) {
        require(opt.from >= 0 && opt.to >= 0 && opt.from < p.size() && opt.to < p.size(), "invalid_argument",
                "--from and --to must both name elements");
        return {dump(json{{"from", opt.from}, {"to", opt.to}, {"mobius", mobius(p, opt.from, opt.to)}})};
    }
    auto bottom = p.bottom();
    require(bottom.has_value(), "not_bounded", "poset has no bottom element; pass --from and --to");
    json result = cached(opt, p, "mobius", [&] {
        json row = json::array();
        const auto& mu = p.mobius_row(*bottom);
        for (int x = 0; x < p.size(); ++x)
            row.push_back(mu[x]);
        return json{{"bottom", *bottom}, {"mobius", row}};
    });
    return {dump(result)};
}

Output poset_homology(const Options& opt)
{
    need(opt.in, "--in");
    PosetInput pi = poset_from_json(read_json_file(opt.in));
    const Poset& p = pi.poset;
    const bool bounded = p.size() > 0 && p.bottom() && p.top();
    json result = cached(opt, p, "homology", [&] {
        BettiTable b = bounded ? interval_homology(p) : reduced_homology(p);
        json j = betti_to_json(b);
        j["complex"] = bounded ? "proper part" : "poset";
        return j;
    });
    if (opt.format == "csv") {
        BettiTable b;
        for (auto& [k, v] : result["ranks"].items())
            b.ranks[std::stoi(k)] = v.get<std::int64_t>();
        return {csv_betti(b)};
    }
    return {dump(result)};
}

Output poset_whitney(const Options& opt)
{
    need(opt.in, "--in");
    PosetInput pi = poset_from_json(read_json_file(opt.in));
    json result = cached(opt, pi.poset, "whitney", [&] { return whitney_to_json(whitney_homology(pi.poset)); });
    if (opt.format == "csv") {
        std::ostringstream s;
        s << "rank,degree,dim\n";
        for (const auto& d : result["dims"])
            s << d["rank"].get<int>() << "," << d["degree"].get<int>() << "," << d["dim"].get<std::int64_t>() << "\n";
        return {s.str()};
    }
    return {dump(result)};
}

// config

Output config_e1(const Options& opt)
{
    need(opt.spec, "--spec");
    SpaceInput space = space_from_json(read_json_file(opt.spec));
    E1Table t = e1_table(space, opt.nmax);
    if (opt.format == "csv") {
        std::ostringstream s;
        s << "n,p,q,dim\n";
        for (int n = 0; n <= t.truncation; ++n)
            for (const auto& [key, v] : t.rows[n])
                s << n << "," << key.first << "," << key.second << "," << v.str() << "\n";
        return {s.str()};
    }
    json rows = json::array();
    for (int n = 0; n <= t.truncation; ++n) {
        json row = json::array();
        for (const auto& [key, v] : t.rows[n])
            row.push_back({{"p", key.first}, {"q", key.second}, {"dim", v.str()}});
        rows.push_back({{"n", n}, {"entries", row}});
    }
    return {dump(json{{"space", space.name}, {"nmax", t.truncation}, {"rows", rows}})};
}

Output config_betti(const Options& opt)
{
    need(opt.spec, "--spec");
    need(opt.n, "--n");
    SpaceInput space = space_from_json(read_json_file(opt.spec));
    BettiTable b = bm_betti(space, opt.n);
    if (opt.format == "csv")
        return {csv_betti(b)};
    json j = betti_to_json(b);
    j["space"] = space.name;
    j["n"] = opt.n;
    return {dump(j)};
}

Output config_euler(const Options& opt)
{
    need(opt.spec, "--spec");
    SpaceInput space = space_from_json(read_json_file(opt.spec));
    EulerSeries e = euler_series(space, opt.nmax);
    json chi = json::array();
    for (const auto& v : e.chi)
        chi.push_back(v.str());
    json out = {{"space", space.name}, {"chi", chi}};
    if (opt.check_closed_form) {
        require(e.closed_form_applies, "closed_form_not_applicable",
                "the closed form needs a free action with no excluded orbits");
        json cf = json::array();
        for (const auto& v : e.closed_form)
            cf.push_back(v.str());
        out["closedForm"] = cf;
        out["matches"] = e.matches;
        require(e.matches, "closed_form_mismatch", "Euler characteristics differ from the closed form");
    }
    return {dump(out)};
}

// stability

Output stability_report(const Options& opt)
{
    need(opt.spec, "--spec");
    SpaceInput space = space_from_json(read_json_file(opt.spec));
    StabilityReport rep = iterate_report(space, parse_variant(opt.variant), opt.steps);
    json out = report_to_json(rep);
    if (opt.verify) {
        json checks = json::array();
        for (std::size_t s = 0; s < rep.steps.size(); ++s) {
            GeneratorBoundCheck c = verify_generator_bound(space, rep, s, opt.j, opt.m, opt.nmax);
            json cj = {{"step", s}, {"applicable", c.applicable}, {"ok", c.ok},
                       {"quotientNonnegative", c.quotient_nonnegative}, {"witnesses", c.witnesses}};
            if (c.applicable)
                cj["bound"] = to_pq(c.bound);
            checks.push_back(cj);
        }
        out["verification"] = {{"j", opt.j}, {"m", opt.m}, {"nmax", opt.nmax}, {"checks", checks}};
    }
    return {dump(out)};
}

// rep

json decomposition_to_json(const std::map<Partition, Integer>& d)
{
    json out = json::array();
    for (const auto& [lambda, mult] : d)
        out.push_back({{"partition", partition_to_json(lambda)}, {"multiplicity", mult.str()}});
    return out;
}

Output rep_decompose(const Options& opt)
{
    need(opt.poset, "--poset");
    if (opt.action != "sym")
        throw Error("malformed_input", "only --action sym is supported");
    PosetInput pi = poset_from_json(read_json_file(opt.poset));
    require(pi.dowling.has_value(), "no_action", "the poset file does not record a Dowling spec, so S_n cannot act");
    const DowlingPoset& dp = *pi.dowling;
    int top = 0;
    for (int x = 0; x < dp.poset.size(); ++x)
        top = std::max(top, dp.poset.rank(x));
    json ranks = json::array();
    for (int r = 0; r <= top; ++r) {
        if (opt.rank >= 0 && r != opt.rank)
            continue;
        ClassFunction cf = whitney_character(dp, r);
        json values = json::array();
        for (const auto& [mu, v] : cf.values)
            values.push_back({{"class", partition_to_json(mu)}, {"value", to_pq(v)}});
        ranks.push_back({{"rank", r}, {"character", values}, {"decomposition", decomposition_to_json(decompose(cf))}});
    }
    return {dump(json{{"n", dp.spec.n}, {"action", "sym"}, {"whitney", ranks}})};
}

std::pair<int, int> parse_window(const std::string& w)
{
    const auto dots = w.find("..");
    if (dots == std::string::npos)
        throw Error("malformed_input", "window must look like a..b");
    try {
        return {std::stoi(w.substr(0, dots)), std::stoi(w.substr(dots + 2))};
    } catch (const std::exception&) {
        throw Error("malformed_input", "window must look like a..b");
    }
}

Output rep_stability(const Options& opt)
{
    need(opt.spec, "--spec");
    need(opt.rank, "--rank");
    need(opt.window, "--window");
    auto [lo, hi] = parse_window(opt.window);
    require(1 <= lo && lo <= hi, "invalid_argument", "window must satisfy 1 <= a <= b");
    SpaceInput space = space_from_json(read_json_file(opt.spec));
    std::map<int, ClassFunction> seq;
    for (int n = lo; n <= hi; ++n)
        seq[n] = whitney_character(build_poset(dowling_spec_for(space, n), opt.cap), opt.rank);

    // |lambda| <= i / eps with i = r (d - 1), for R^d with d >= 2
    std::optional<Rational> bound;
    const bool euclidean = space.group.order == 1 && space.orbits.empty() && space.d() >= 2 &&
                           std::all_of(space.betti.begin(), space.betti.end() - 1, [](auto b) { return b == 0; });
    if (euclidean) {
        StabilityStep s = classify_step(locus_from_space(space));
        if (s.classification == "absolute" && s.epsilon)
            bound = Rational(opt.rank * (space.d() - 1)) / *s.epsilon;
    }
    StableMultiplicityReport rep = stable_multiplicity_check(seq, bound);

    json per_n = json::array();
    for (const auto& [n, names] : rep.names)
        per_n.push_back({{"n", n},
                         {"decomposition", decomposition_to_json(rep.decompositions[n])},
                         {"names", decomposition_to_json(names)}});
    json out = {{"space", space.name},
                {"rank", opt.rank},
                {"window", {lo, hi}},
                {"stable", rep.stable},
                {"stableNames", decomposition_to_json(rep.stable_names)},
                {"perN", per_n}};
    out["firstViolation"] = rep.first_violation ? json(*rep.first_violation) : json(nullptr);
    if (bound) {
        out["sizeBound"] = to_pq(*bound);
        out["sizeBoundOk"] = rep.size_bound_ok;
    }
    return {dump(out)};
}

void write_error(std::ostream& err, const std::string& code, const std::string& message)
{
    err << json{{"error", {{"code", code}, {"message", message}}}}.dump() << "\n";
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Orbit configuration spaces: Dowling posets, E1 pages and stability", "ocs"};
    app.require_subcommand(1);
    Options opt;
    std::function<Output(const Options&)> action;

    auto common = [&](CLI::App* c) {
        c->add_option("--out", opt.out, "output file, - for standard output");
        c->add_option("--cap", opt.cap, "maximal number of poset elements");
        c->add_flag("--no-cache", opt.no_cache, "ignore OCS_CACHE");
    };
    auto leaf = [&](CLI::App* parent, const char* name, const char* help, Output (*fn)(const Options&)) {
        CLI::App* c = parent->add_subcommand(name, help);
        common(c);
        c->callback([&action, fn] { action = fn; });
        return c;
    };

    CLI::App* dowling = app.add_subcommand("dowling", "Dowling posets");
    dowling->require_subcommand(1);
    auto* db = leaf(dowling, "build", "enumerate a Dowling poset", dowling_build);
    db->add_option("--spec", opt.spec)->required();
    db->add_option("--n", opt.n)->required();
    auto* dc = leaf(dowling, "count", "BFS count against the species count", dowling_count);
    dc->add_option("--spec", opt.spec)->required();
    dc->add_option("--n", opt.n)->required();
    auto* di = leaf(dowling, "interval", "factor a lower interval", dowling_interval);
    di->add_option("--spec", opt.spec)->required();
    di->add_option("--element", opt.element)->required();
    di->add_option("--n", opt.n);

    CLI::App* poset = app.add_subcommand("poset", "poset invariants");
    poset->require_subcommand(1);
    auto* pm = leaf(poset, "mobius", "Mobius function", poset_mobius);
    pm->add_option("--in", opt.in)->required();
    pm->add_option("--from", opt.from);
    pm->add_option("--to", opt.to);
    auto* ph = leaf(poset, "homology", "reduced homology", poset_homology);
    ph->add_option("--in", opt.in)->required();
    ph->add_option("--format", opt.format)->check(CLI::IsMember({"json", "csv"}));
    auto* pw = leaf(poset, "whitney", "Whitney homology", poset_whitney);
    pw->add_option("--in", opt.in)->required();
    pw->add_option("--format", opt.format)->check(CLI::IsMember({"json", "csv"}));

    CLI::App* config = app.add_subcommand("config", "orbit configuration spaces");
    config->require_subcommand(1);
    auto* ce = leaf(config, "e1", "E1 page dimensions", config_e1);
    ce->add_option("--spec", opt.spec)->required();
    ce->add_option("--nmax", opt.nmax)->check(CLI::Range(0, kMaxTruncation));
    ce->add_option("--format", opt.format)->check(CLI::IsMember({"json", "csv"}));
    auto* cb = leaf(config, "betti", "Borel-Moore Betti numbers", config_betti);
    cb->add_option("--spec", opt.spec)->required();
    cb->add_option("--n", opt.n)->required()->check(CLI::Range(0, kMaxTruncation));
    cb->add_option("--format", opt.format)->check(CLI::IsMember({"json", "csv"}));
    auto* cu = leaf(config, "euler", "compactly supported Euler characteristics", config_euler);
    cu->add_option("--spec", opt.spec)->required();
    cu->add_option("--nmax", opt.nmax)->check(CLI::Range(0, kMaxTruncation));
    cu->add_flag("--check-closed-form", opt.check_closed_form);

    CLI::App* stability = app.add_subcommand("stability", "generation locus and stabilization");
    stability->require_subcommand(1);
    auto* sr = leaf(stability, "report", "iterated stabilization report", stability_report);
    sr->add_option("--spec", opt.spec)->required();
    sr->add_option("--variant", opt.variant)->check(CLI::IsMember({"left", "right", "bottom"}));
    sr->add_option("--steps", opt.steps)->check(CLI::PositiveNumber);
    sr->add_flag("--verify", opt.verify);
    sr->add_option("--nmax", opt.nmax)->check(CLI::Range(0, kMaxTruncation));
    sr->add_option("--j", opt.j)->check(CLI::NonNegativeNumber);
    sr->add_option("--m", opt.m)->check(CLI::NonNegativeNumber);

    CLI::App* rep = app.add_subcommand("rep", "symmetric group representations");
    rep->require_subcommand(1);
    auto* rd = leaf(rep, "decompose", "decompose Whitney characters", rep_decompose);
    rd->add_option("--poset", opt.poset)->required();
    rd->add_option("--action", opt.action)->check(CLI::IsMember({"sym"}));
    rd->add_option("--rank", opt.rank);
    auto* rs = leaf(rep, "stability", "multiplicity stability over a window", rep_stability);
    rs->add_option("--spec", opt.spec)->required();
    rs->add_option("--rank", opt.rank)->required()->check(CLI::NonNegativeNumber);
    rs->add_option("--window", opt.window)->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        write_error(err, "usage", e.what());
        return 2;
    }
    if (!action) {
        write_error(err, "usage", "no command given");
        return 2;
    }

    Output result;
    try {
        result = action(opt);
    } catch (const CLI::ParseError& e) {
        write_error(err, "usage", e.what());
        return 2;
    } catch (const Error& e) {
        write_error(err, e.code(), e.what());
        return e.code() == "malformed_input" ? 2 : 1;
    } catch (const json::exception& e) {
        write_error(err, "malformed_input", e.what());
        return 2;
    } catch (const std::exception& e) {
        write_error(err, "internal", e.what());
        return 1;
    }

    if (opt.out == "-") {
        out << result.text;
        return 0;
    }
    const std::string tmp = opt.out + ".partial";
    {
        std::ofstream f(tmp, std::ios::binary);
        f << result.text;
        if (!f) {
            std::error_code ec;
            fs::remove(tmp, ec);
            write_error(err, "io", "cannot write " + opt.out);
            return 1;
        }
    }
    std::error_code ec;
    fs::rename(tmp, opt.out, ec);
    if (ec) {
        fs::remove(tmp, ec);
        write_error(err, "io", "cannot write " + opt.out);
        return 1;
    }
    return 0;
}

} // namespace ocs
