#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sandwich/certificate_json.hpp"
#include "sandwich/scan.hpp"
#include "sandwich/search.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;
constexpr int kExitIo = 3;

using namespace sandwich;

char sequence_letter(Mode mode) {
    switch (mode) {
        case Mode::Sandwich: return 'a';
        case Mode::Prepend: return 'b';
        case Mode::Append: return 'c';
    }
    return '?';
}

std::string screen_text(const ScreenReason& reason) {
    switch (reason.kind) {
        case ScreenKind::EvenDigitsSharedFactor:
            return "even digit count, shared factor " + reason.witness.get_str() + " with base+1";
        case ScreenKind::OddBaseEvenN:
            return "odd base and even n, every member is even";
        case ScreenKind::PrependSharedBaseFactor:
            return "shared factor " + reason.witness.get_str() + " with the base";
    }
    return "?";
}

unsigned certificate_max_k(const CoveringCertificate& cert) {
    unsigned max_k = 0;
    for (const auto& entry : cert.entries)
        if (const auto* cov = std::get_if<DigitCovering>(&entry)) max_k = std::max(max_k, cov->k);
    return max_k;
}

struct FamilyOptions {
    std::string n;
    int base = 10;
    std::string mode = "sandwich";

    FamilySpec spec() const { return FamilySpec(Base(base), mode_from_name(mode), Natural(n)); }
};

void add_family_options(CLI::App& cmd, FamilyOptions& opts) {
    cmd.add_option("n", opts.n, "family core n (decimal)")->required();
    cmd.add_option("--base", opts.base, "number base")->default_val(10)
        ->check(CLI::Range(2, 36));
    cmd.add_option("--mode", opts.mode, "family construction")->default_val("sandwich")
        ->check(CLI::IsMember({"sandwich", "prepend", "append"}));
}

struct SearchOptions {
    unsigned long max_m = 0;
    bool max_m_set = false;
    std::vector<unsigned> k_set;
    std::uint64_t factor_bound = 0;

    SearchConfig config(unsigned long default_max_m) const {
        SearchConfig cfg;
        cfg.max_m = max_m_set ? max_m : default_max_m;
        if (!k_set.empty()) cfg.k_candidates = k_set;
        if (factor_bound != 0) cfg.factor_bound = FactorBound(factor_bound);
        return cfg;
    }
};

void add_search_options(CLI::App& cmd, SearchOptions& opts) {
    cmd.add_option("--max-m", opts.max_m, "largest block length m to search")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--k-set", opts.k_set, "covering moduli to try, in order")
        ->delimiter(',');
    cmd.add_option("--factor-bound", opts.factor_bound,
                   "trial-division cap for witness extraction")
        ->check(CLI::Range(std::uint64_t(2), std::uint64_t(10'000'000)));
}

int cmd_eval(const FamilyOptions& family, const SearchOptions& search, bool deep,
             const std::string& out_path) {
    const FamilySpec spec = family.spec();
    SearchConfig cfg = search.config(deep && !search.max_m_set ? 2000 : 1500);
    const char seq = sequence_letter(spec.mode);
    const std::string label =
        std::string(1, seq) + "(" + spec.n.get_str() + ")" +
        (spec.base.value() == 10 ? "" : " [base " + std::to_string(spec.base.value()) + "]");

    const SearchResult result = eval(spec, cfg);
    nlohmann::ordered_json doc;
    doc["sequence"] = std::string(1, seq);
    doc["base"] = spec.base.value();
    doc["mode"] = mode_name(spec.mode);
    doc["n"] = spec.n.get_str();

    if (const auto* hit = std::get_if<PrimeHit>(&result)) {
        const std::string value = hit->value.get_str();
        const bool presumed = hit->verdict == PrimalityVerdict::ProbablePrime;
        std::cout << label << " = ";
        if (value.size() <= 50)
            std::cout << value;
        else
            std::cout << "[" << value.size() << "-digit value]";
        std::cout << " (" << (presumed ? "presumably prime" : "prime") << ", d=" << hit->d
                  << ", m=" << hit->m << ", " << value.size() << " digits)\n";
        doc["outcome"] = presumed ? "probable_prime" : "prime";
        doc["d"] = hit->d;
        doc["m"] = hit->m;
        doc["digits"] = value.size();
        doc["value"] = value;
    } else if (const auto* zero = std::get_if<CertifiedZero>(&result)) {
        const CoveringCertificate& cert = zero->certificate;
        if (cert.screen) {
            std::cout << label << " = 0 (screened: " << screen_text(*cert.screen) << ")\n";
            doc["outcome"] = "zero";
            doc["screen"] = certificate_to_json(cert)["screen"];
        } else {
            const unsigned k = certificate_max_k(cert);
            std::cout << label << " = 0 (certified, k=" << k << ")\n";
            doc["outcome"] = "zero";
            doc["k"] = k;
        }
        if (!out_path.empty()) {
            save_certificate(cert, out_path);
            doc["certificate"] = out_path;
        }
    } else {
        const auto& unknown = std::get<Unknown>(result);
        std::cout << label << " = unknown (no prime found for m <= " << unknown.max_m_searched
                  << ")\n";
        doc["outcome"] = "unknown";
        doc["max_m_searched"] = unknown.max_m_searched;
    }
    std::cout << doc.dump() << '\n';
    return kExitOk;
}

int cmd_certify(const FamilyOptions& family, const SearchOptions& search,
                const std::string& out_path) {
    const FamilySpec spec = family.spec();
    const SearchConfig cfg = search.config(1500);
    const auto cert = find_covering(spec, cfg.k_candidates, cfg.factor_bound);
    if (!cert) {
        std::cerr << "no certificate found for " << sequence_letter(spec.mode) << "("
                  << spec.n.get_str() << ") with k in {";
        for (std::size_t i = 0; i < cfg.k_candidates.size(); ++i)
            std::cerr << (i ? "," : "") << cfg.k_candidates[i];
        std::cerr << "}\n";
        return kExitVerification;
    }
    if (!out_path.empty()) save_certificate(*cert, out_path);
    std::cout << certificate_to_json(*cert).dump(2) << '\n';
    return kExitOk;
}

int cmd_verify(const std::string& path) {
    CoveringCertificate cert = load_certificate(path);
    if (const auto reason = verify_certificate_error(cert)) {
        std::cout << "REJECT: " << *reason << '\n';
        return kExitVerification;
    }
    std::cout << "OK: certificate for " << sequence_letter(cert.spec.mode) << "("
              << cert.spec.n.get_str() << "), base " << cert.spec.base.value() << '\n';
    return kExitOk;
}

int cmd_scan(unsigned long n_lo, unsigned long n_hi, const FamilyOptions& family,
             const SearchOptions& search, const RunConfig& run) {
    RunConfig cfg = run;
    cfg.search = [&] {
        SearchConfig scfg = search.config(scan_search_defaults().max_m);
        return scfg;
    }();
    const ScanReport report =
        run_scan(n_lo, n_hi, Base(family.base), mode_from_name(family.mode), cfg);
    switch (cfg.format) {
        case ReportFormat::Json: std::cout << report_to_json(report).dump(2) << '\n'; break;
        case ReportFormat::Csv: std::cout << report_csv(report); break;
        case ReportFormat::BFile: std::cout << report_bfile(report); break;
    }
    return kExitOk;
}

int cmd_audit(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot open " << path << '\n';
        return kExitIo;
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        std::cerr << "report: " << path << " is not valid JSON: " << e.what() << '\n';
        return kExitVerification;
    }
    std::cout << audit_summary(report_from_json(doc));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"digit-sandwich prime search and repunit covering certificates"};
    app.require_subcommand(1);

    FamilyOptions family;
    SearchOptions search;
    std::string out_path;
    std::string verify_path;
    std::string audit_path;
    bool deep = false;
    unsigned long n_lo = 0, n_hi = 0;
    RunConfig run;
    std::string format = "json";

    CLI::App* eval_cmd = app.add_subcommand("eval", "smallest prime member, or a certified zero");
    add_family_options(*eval_cmd, family);
    add_search_options(*eval_cmd, search);
    eval_cmd->add_flag("--deep", deep, "allow long searches (raises default --max-m to 2000)");
    eval_cmd->add_option("--out", out_path, "write the certificate here when the result is zero");

    CLI::App* certify_cmd = app.add_subcommand("certify", "covering certificate for one family");
    add_family_options(*certify_cmd, family);
    add_search_options(*certify_cmd, search);
    certify_cmd->add_option("--out", out_path, "also write the certificate to this file");

    CLI::App* verify_cmd = app.add_subcommand("verify", "re-check a certificate file from scratch");
    verify_cmd->add_option("certificate", verify_path, "certificate JSON file")->required();

    CLI::App* scan_cmd = app.add_subcommand("scan", "evaluate a whole n-range in parallel");
    scan_cmd->add_option("n_lo", n_lo, "first n")->required()->check(CLI::PositiveNumber);
    scan_cmd->add_option("n_hi", n_hi, "last n")->required()->check(CLI::PositiveNumber);
    scan_cmd->add_option("--base", family.base, "number base")->default_val(10)
        ->check(CLI::Range(2, 36));
    scan_cmd->add_option("--mode", family.mode, "family construction")->default_val("sandwich")
        ->check(CLI::IsMember({"sandwich", "prepend", "append"}));
    add_search_options(*scan_cmd, search);
    std::string scan_out = "scan_out";
    scan_cmd->add_option("--workers", run.workers,
                         "worker threads (default: SANDWICH_WORKERS or hardware)");
    scan_cmd->add_option("--out", scan_out, "output directory")->default_val("scan_out");
    scan_cmd->add_option("--format", format, "stdout dump format")->default_val("json")
        ->check(CLI::IsMember({"json", "bfile", "csv"}));
    scan_cmd->add_flag("--resume,!--no-resume", run.resume,
                       "continue from an existing result log (default on)");

    CLI::App* audit_cmd = app.add_subcommand("audit", "conjecture summary for a scan report");
    audit_cmd->add_option("report", audit_path, "report.json from a scan")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    search.max_m_set = eval_cmd->count("--max-m") > 0 || certify_cmd->count("--max-m") > 0 ||
                       scan_cmd->count("--max-m") > 0;
    run.out_dir = scan_out;
    run.format = format == "json" ? ReportFormat::Json
                : format == "csv" ? ReportFormat::Csv
                                  : ReportFormat::BFile;

    try {
        if (eval_cmd->parsed()) return cmd_eval(family, search, deep, out_path);
        if (certify_cmd->parsed()) return cmd_certify(family, search, out_path);
        if (verify_cmd->parsed()) return cmd_verify(verify_path);
        if (scan_cmd->parsed()) return cmd_scan(n_lo, n_hi, family, search, run);
        if (audit_cmd->parsed()) return cmd_audit(audit_path);
    } catch (const std::system_error& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::runtime_error& e) {
        // malformed certificates and reports land here
        std::cerr << e.what() << '\n';
        return kExitVerification;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
