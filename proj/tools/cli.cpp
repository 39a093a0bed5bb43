#include "cli.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <hdcat/eqrel.hpp>
#include <hdcat/error.hpp>
#include <hdcat/generate.hpp>
#include <hdcat/hd.hpp>
#include <hdcat/io.hpp>
#include <hdcat/space.hpp>

namespace hdcat::cli {

namespace {

using nlohmann::json;

struct Options {
    std::string input;
    std::string output;
    std::uint64_t seed = 1;
    int n = 2;
    std::size_t max_size = 4;
    std::size_t max_elements = kDefaultMaxElements;
    int level = 2;
    int count = 20;
    /// Stored-element bound for towers drawn by the fuzzer.
    std::size_t fuzz_cap = 1000;
};

// A command's JSON report and exit code.
struct Result {
    json report;
    int code = kExitOk;
};

// Errors caused by the input itself rather than by a property of it.
bool is_input_error(ErrorKind kind)
{
    return kind == ErrorKind::ParseError || kind == ErrorKind::InvalidArgument || kind == ErrorKind::SizeExceeded;
}

json error_json(const Error& e)
{
    return {{"kind", std::string(to_string(e.kind()))}, {"location", e.location()}, {"message", e.what()}};
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::InvalidArgument, "cannot read " + path, "path=" + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// An n-fold category from any document that presents one: a carrier, a
// finite category (its nerve) or a tower.
NFoldCat load_nfold(const std::string& text)
{
    switch (io::classify(text)) {
    case io::Document::Mss:
        return promote(validate_mss(io::parse_mss(text)));
    case io::Document::FinCat:
        return nerve_nfold(validate_fincat(io::parse_fincat(text)));
    case io::Document::Tower:
        return tower_nfold(io::parse_tower(text));
    default:
        throw Error(ErrorKind::ParseError, "input is not a carrier, category or tower document");
    }
}

// Loads the input, turning validation failures into a failed report.
std::optional<NFoldCat> load_or_report(const Options& o, Result& r, const char* flag)
{
    try {
        return load_nfold(read_file(o.input));
    } catch (const Error& e) {
        if (is_input_error(e.kind()))
            throw;
        r.report = {{flag, false}, {"error", error_json(e)}};
        r.code = kExitPropertyFailure;
        return std::nullopt;
    }
}

Result cmd_validate(const Options& o)
{
    Result r;
    auto x = load_or_report(o, r, "valid");
    if (x) {
        std::size_t elements = 0;
        for (std::size_t c = 0; c < x->size(); ++c)
            elements += x->cell(c).size();
        r.report = {{"valid", true}, {"n", x->n()}, {"stored_elements", elements}};
    }
    return r;
}

Result cmd_check_hd(const Options& o)
{
    Result r;
    auto x = load_or_report(o, r, "hd");
    if (!x)
        return r;
    HdResult h = is_hd(*x);
    r.report = json::parse(io::hd_report_json(h, nullptr));
    r.code = h ? kExitOk : kExitPropertyFailure;
    return r;
}

Result cmd_discretize(const Options& o)
{
    Result r;
    auto x = load_or_report(o, r, "hd");
    if (!x)
        return r;
    HdResult h = is_hd(*x);
    if (!h) {
        r.report = json::parse(io::hd_report_json(h, nullptr));
        r.code = kExitPropertyFailure;
        return r;
    }
    DiscretizationData d = discretize(*x, *h.cert);
    r.report = json::parse(io::hd_report_json(h, &d));
    return r;
}

Result cmd_nequiv(const Options& o, std::ostream& err)
{
    const std::string text = read_file(o.input);
    const io::Document kind = io::classify(text);
    if (kind != io::Document::Map && kind != io::Document::Report)
        throw Error(ErrorKind::ParseError, "expected a map document or a discretize report");
    Result r;
    NFoldMap f;
    try {
        f = io::parse_nfold_map(kind == io::Document::Map ? text : io::extract_gamma(text));
    } catch (const Error& e) {
        if (is_input_error(e.kind()))
            throw;
        r.report = {{"equivalence", nullptr}, {"error", error_json(e)}};
        r.code = kExitPropertyFailure;
        return r;
    }
    HdResult dom = is_hd(f.dom);
    HdResult cod = is_hd(f.cod);
    if (!dom || !cod) {
        const HdFailure& why = dom ? *cod.failure : *dom.failure;
        r.report = {{"equivalence", nullptr},
                    {"error", {{"kind", "NotHomotopicallyDiscrete"},
                               {"side", dom ? "cod" : "dom"},
                               {"clause", why.clause},
                               {"location", why.location},
                               {"message", why.reason}}}};
        r.code = kExitPropertyFailure;
        return r;
    }
    const bool recursive = is_n_equivalence(f, *dom.cert, *cod.cert);
    const bool via_d = is_n_equivalence_via_discretization(f, *dom.cert, *cod.cert);
    r.report = {{"recursive", recursive}, {"via_discretization", via_d}, {"agree", recursive == via_d}};
    if (recursive != via_d) {
        err << "error: the recursive decider says " << recursive << " and the discretization decider says " << via_d
            << "\n";
        r.report["equivalence"] = nullptr;
        r.code = kExitPropertyFailure;
        return r;
    }
    r.report["equivalence"] = recursive;
    r.code = recursive ? kExitOk : kExitPropertyFailure;
    return r;
}

Result cmd_bspace(const Options& o)
{
    if (o.level < 2)
        throw Error(ErrorKind::InvalidArgument, "--level must be at least 2");
    Result r;
    auto x = load_or_report(o, r, "hd");
    if (!x)
        return r;
    TruncSSet y = diag_classifying(*x, o.level, o.max_elements);
    Quotient components = pi0(y);
    Homology1 h = h1(y);
    json torsion = json::array();
    for (const auto& t : h.torsion)
        torsion.push_back(t.str());
    r.report = {{"level", o.level},
                {"pi0", {{"size", components.classes.size()}}},
                {"h1", {{"free_rank", h.free_rank}, {"torsion", torsion}}}};
    HdResult cert = is_hd(*x);
    r.report["hd"] = static_cast<bool>(cert);
    if (cert) {
        ZeroTypeReport z = verify_zero_type(*x, *cert.cert, o.max_elements);
        r.report["pi0"]["discretization_size"] = z.discretization_size;
        r.report["pi0"]["bijection"] = z.pi0_bijection;
        const bool zero_type = z.pi0_bijection && h.trivial();
        r.report["zero_type_necessary"] = zero_type;
        r.code = zero_type ? kExitOk : kExitPropertyFailure;
    }
    return r;
}

Result cmd_gen_tower(const Options& o)
{
    TowerSpec spec{o.n, o.max_size, o.max_elements};
    return {json::parse(io::tower_to_json(random_tower(o.seed, spec))), kExitOk};
}

// Both round trips on an already certified object.
json round_trips(const NFoldCat& x, const HdCert& cert)
{
    EqrData e = nfold_to_eqr(x, cert);
    const bool to_cathd = eqr_to_nfold(e) == x;
    NFoldCat rebuilt = eqr_to_nfold(e);
    const bool to_eqr = nfold_to_eqr(rebuilt, certify_hd(rebuilt)) == e;
    return {{"cathd_eqr_cathd", to_cathd}, {"eqr_cathd_eqr", to_eqr}};
}

Result cmd_roundtrip(const Options& o)
{
    const std::string text = read_file(o.input);
    Result r;
    NFoldCat x;
    if (io::classify(text) == io::Document::Tower) {
        x = eqr_to_nfold(canonicalize_eqr(tower_to_eqr(io::parse_tower(text))));
    } else {
        auto loaded = load_or_report(o, r, "hd");
        if (!loaded)
            return r;
        x = *loaded;
    }
    HdResult h = is_hd(x);
    if (!h) {
        r.report = json::parse(io::hd_report_json(h, nullptr));
        r.code = kExitPropertyFailure;
        return r;
    }
    // The canonical representation of a certified object has its last
    // axis in pair form.
    x = normalize_last_axis(x).object;
    r.report = round_trips(x, certify_hd(x));
    const bool ok = r.report["cathd_eqr_cathd"].get<bool>() && r.report["eqr_cathd_eqr"].get<bool>();
    r.code = ok ? kExitOk : kExitPropertyFailure;
    return r;
}

// Checks one drawn tower and its mutations; returns the failed checks.
std::vector<std::string> fuzz_case(const Options& o, std::uint64_t seed)
{
    std::vector<std::string> failed;
    NFoldCat x = tower_nfold(random_tower(seed, TowerSpec{o.n, o.max_size, o.fuzz_cap}));
    HdResult h = is_hd(x);
    if (!h)
        return {"is_hd"};
    json trips = round_trips(x, *h.cert);
    if (!trips["cathd_eqr_cathd"].get<bool>() || !trips["eqr_cathd_eqr"].get<bool>())
        failed.push_back("roundtrip");
    if (!verify_zero_type(x, *h.cert, o.max_elements).zero_type_necessary())
        failed.push_back("zero_type");
    if (o.n < 1)
        return failed;
    if (is_hd(coproduct(x, arrow_along(o.n, 0))))
        failed.push_back("mutation ArrowInFirstAxis accepted");
    if (is_hd(coproduct(x, arrow_along(o.n, o.n - 1))))
        failed.push_back("mutation ArrowInLastAxis accepted");
    try {
        promote(duplicate_top_element(x));
        failed.push_back("mutation SegalCorruption accepted");
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::SegalFailure)
            failed.push_back("mutation SegalCorruption reported as " + std::string(to_string(e.kind())));
    }
    return failed;
}

Result cmd_fuzz(const Options& o)
{
    json failures = json::array();
    json skipped = json::array();
    for (int i = 0; i < o.count; ++i) {
        const std::uint64_t seed = o.seed + static_cast<std::uint64_t>(i);
        try {
            for (const std::string& check : fuzz_case(o, seed))
                failures.push_back({{"seed", seed}, {"check", check}});
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::SizeExceeded)
                throw;
            skipped.push_back({{"seed", seed}, {"reason", e.what()}});
        }
    }
    Result r;
    r.report = {{"cases", o.count}, {"seed", o.seed}, {"n", o.n}, {"failures", failures}, {"skipped", skipped}};
    r.code = failures.empty() ? kExitOk : kExitPropertyFailure;
    return r;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Homotopically discrete n-fold categories"};
    app.require_subcommand(1);
    Options o;

    auto input = [&](CLI::App* sub) { sub->add_option("--input", o.input, "Input JSON file")->required(); };
    auto size_guard = [&](CLI::App* sub) {
        sub->add_option("--max-elements", o.max_elements, "Element bound for evaluated cells");
    };

    CLI::App* validate = app.add_subcommand("validate", "Validate a carrier and promote it");
    input(validate);
    CLI::App* check_hd = app.add_subcommand("check-hd", "Decide homotopic discreteness");
    input(check_hd);
    CLI::App* disc = app.add_subcommand("discretize", "Discretization and gamma");
    input(disc);
    CLI::App* nequiv = app.add_subcommand("nequiv", "Decide n-equivalence of a map or of a report's gamma");
    input(nequiv);
    CLI::App* bspace = app.add_subcommand("bspace", "Classifying-space report");
    input(bspace);
    bspace->add_option("--level", o.level, "Diagonal truncation level (>= 2)");
    size_guard(bspace);
    CLI::App* gen = app.add_subcommand("gen-tower", "Generate a random tower");
    gen->add_option("--seed", o.seed, "Seed");
    gen->add_option("--n", o.n, "Tower length");
    gen->add_option("--max-size", o.max_size, "Largest set size");
    size_guard(gen);
    CLI::App* roundtrip = app.add_subcommand("roundtrip", "Check both round trips");
    input(roundtrip);
    CLI::App* fuzz = app.add_subcommand("fuzz", "Random towers and mutations");
    fuzz->add_option("--seed", o.seed, "First seed");
    fuzz->add_option("--n", o.n, "Tower length");
    fuzz->add_option("--max-size", o.max_size, "Largest set size");
    fuzz->add_option("--count", o.count, "Number of towers");
    fuzz->add_option("--max-elements", o.fuzz_cap, "Stored-element bound for drawn towers");
    for (CLI::App* sub : app.get_subcommands({}))
        sub->add_option("--output", o.output, "Write the report here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream usage, problems;
        const int code = app.exit(e, usage, problems);
        out << usage.str();
        err << problems.str();
        return code == 0 ? kExitOk : kExitInputError;
    }

    Result r;
    try {
        if (*validate)
            r = cmd_validate(o);
        else if (*check_hd)
            r = cmd_check_hd(o);
        else if (*disc)
            r = cmd_discretize(o);
        else if (*nequiv)
            r = cmd_nequiv(o, err);
        else if (*bspace)
            r = cmd_bspace(o);
        else if (*gen)
            r = cmd_gen_tower(o);
        else if (*roundtrip)
            r = cmd_roundtrip(o);
        else
            r = cmd_fuzz(o);
    } catch (const Error& e) {
        err << "error: " << e.what();
        if (!e.location().empty())
            err << " [" << e.location() << "]";
        err << "\n";
        return is_input_error(e.kind()) ? kExitInputError : kExitPropertyFailure;
    }

    if (r.report.contains("error"))
        err << "failure: " << r.report["error"]["message"].get<std::string>() << "\n";
    if (o.output.empty()) {
        out << r.report.dump(2) << "\n";
    } else {
        std::ofstream file(o.output);
        if (!file) {
            err << "error: cannot write " << o.output << "\n";
            return kExitInputError;
        }
        file << r.report.dump(2) << "\n";
    }
    return r.code;
}

}  // namespace hdcat::cli
