#include "sandwich/scan.hpp"

#include <atomic>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "sandwich/certificate_json.hpp"

namespace sandwich {

namespace fs = std::filesystem;

unsigned default_workers() {
    if (const char* env = std::getenv("SANDWICH_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1) return unsigned(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

SearchConfig scan_search_defaults() {
    SearchConfig cfg;
    // per-n cap for range scans; n that exhaust it land in the unknown
    // sidecar for targeted deep runs
    cfg.max_m = 60;
    return cfg;
}

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Screened: return "screened";
        case Outcome::Zero: return "zero";
        case Outcome::Prime: return "prime";
        case Outcome::ProbablePrime: return "probable_prime";
        case Outcome::Unknown: return "unknown";
    }
    throw std::logic_error("bad outcome");
}

namespace {

std::optional<Outcome> outcome_from_name(std::string_view name) {
    for (Outcome o : {Outcome::Screened, Outcome::Zero, Outcome::Prime, Outcome::ProbablePrime,
                      Outcome::Unknown})
        if (name == outcome_name(o)) return o;
    return std::nullopt;
}

constexpr const char* kCsvHeader = "n,outcome,d,m,digits,witness_k";

std::string csv_line(const ScanRow& row) {
    std::ostringstream out;
    out << row.n << ',' << outcome_name(row.outcome) << ',';
    const bool prime = row.outcome == Outcome::Prime || row.outcome == Outcome::ProbablePrime;
    if (prime) out << row.d;
    out << ',';
    if (prime) out << row.m;
    out << ',';
    if (prime) out << row.digits;
    out << ',';
    if (row.outcome == Outcome::Zero) out << row.witness_k;
    out << '\n';
    return out.str();
}

std::optional<std::uint64_t> parse_u64(std::string_view field) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size()) return std::nullopt;
    return v;
}

std::optional<ScanRow> parse_csv_line(std::string_view line) {
    std::array<std::string_view, 6> fields;
    std::size_t start = 0;
    for (int i = 0; i < 6; ++i) {
        const std::size_t comma = line.find(',', start);
        if (i < 5) {
            if (comma == std::string_view::npos) return std::nullopt;
            fields[i] = line.substr(start, comma - start);
            start = comma + 1;
        } else {
            if (comma != std::string_view::npos) return std::nullopt;
            fields[i] = line.substr(start);
        }
    }
    ScanRow row;
    const auto n = parse_u64(fields[0]);
    const auto outcome = outcome_from_name(fields[1]);
    if (!n || !outcome) return std::nullopt;
    row.n = *n;
    row.outcome = *outcome;
    const bool prime = row.outcome == Outcome::Prime || row.outcome == Outcome::ProbablePrime;
    if (prime) {
        const auto d = parse_u64(fields[2]);
        const auto m = parse_u64(fields[3]);
        const auto digits = parse_u64(fields[4]);
        if (!d || !m || !digits) return std::nullopt;
        row.d = int(*d);
        row.m = *m;
        row.digits = unsigned(*digits);
    } else if (!fields[2].empty() || !fields[3].empty() || !fields[4].empty()) {
        return std::nullopt;
    }
    if (row.outcome == Outcome::Zero) {
        const auto k = parse_u64(fields[5]);
        if (!k) return std::nullopt;
        row.witness_k = unsigned(*k);
    } else if (!fields[5].empty()) {
        return std::nullopt;
    }
    return row;
}

std::string cert_relative_path(unsigned long n) {
    return "certs/cert_" + std::to_string(n) + ".json";
}

struct WorkerItem {
    ScanRow row;
    std::optional<CoveringCertificate> cert;  // zeros only
};

WorkerItem evaluate_one(unsigned long n, Base base, Mode mode, const SearchConfig& search) {
    FamilySpec spec(base, mode, Natural(n));
    SearchResult result = eval(spec, search);
    WorkerItem item;
    item.row.n = n;
    if (auto* hit = std::get_if<PrimeHit>(&result)) {
        item.row.outcome = hit->verdict == PrimalityVerdict::DeterministicPrime
                               ? Outcome::Prime
                               : Outcome::ProbablePrime;
        item.row.d = hit->d;
        item.row.m = hit->m;
        item.row.digits = digit_count(hit->value, base);
    } else if (auto* zero = std::get_if<CertifiedZero>(&result)) {
        if (zero->certificate.screen) {
            item.row.outcome = Outcome::Screened;
        } else {
            item.row.outcome = Outcome::Zero;
            unsigned max_k = 0;
            for (const auto& entry : zero->certificate.entries)
                if (const auto* cov = std::get_if<DigitCovering>(&entry))
                    max_k = std::max(max_k, cov->k);
            item.row.witness_k = max_k;
            item.cert = std::move(zero->certificate);
        }
    } else {
        item.row.outcome = Outcome::Unknown;
    }
    return item;
}

nlohmann::ordered_json scan_meta(unsigned long n_lo, unsigned long n_hi, Base base, Mode mode,
                                 const SearchConfig& search) {
    nlohmann::ordered_json meta;
    meta["range"] = {n_lo, n_hi};
    meta["base"] = base.value();
    meta["mode"] = mode_name(mode);
    meta["max_m"] = search.max_m;
    meta["k_candidates"] = search.k_candidates;
    meta["factor_bound"] = search.factor_bound.limit;
    return meta;
}

// Valid ascending prefix of a previous run's log. Only newline-terminated
// lines count: a line torn by a cancelled run is dropped, not misread.
std::vector<ScanRow> load_log(const fs::path& path, unsigned long n_lo, unsigned long n_hi) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string content = buffer.str();

    std::vector<ScanRow> rows;
    std::size_t pos = 0;
    bool saw_header = false;
    unsigned long expected = n_lo;
    while (pos < content.size()) {
        const std::size_t nl = content.find('\n', pos);
        if (nl == std::string::npos) break;
        const std::string_view line(content.data() + pos, nl - pos);
        pos = nl + 1;
        if (!saw_header) {
            if (line != kCsvHeader) return {};
            saw_header = true;
            continue;
        }
        const auto row = parse_csv_line(line);
        if (!row || row->n != expected || row->n > n_hi) break;
        rows.push_back(*row);
        ++expected;
    }
    return rows;
}

void must_write(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::system_error(errno, std::generic_category(),
                                      "cannot open " + path.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::system_error(errno, std::generic_category(), "write failed: " + path.string());
}

ScanReport finalize(std::vector<ScanRow> rows, unsigned long n_lo, unsigned long n_hi, Base base,
                    Mode mode) {
    ScanReport report;
    report.n_lo = n_lo;
    report.n_hi = n_hi;
    report.base = base.value();
    report.mode = mode;
    for (const ScanRow& row : rows) {
        switch (row.outcome) {
            case Outcome::Zero:
                report.zeros.push_back({row.n, row.witness_k, cert_relative_path(row.n)});
                report.audit.zeros++;
                if (row.n % 3 == 0) report.audit.zeros_multiple_of_3++;
                break;
            case Outcome::Screened: {
                report.audit.screened++;
                const auto reason = screen(FamilySpec(base, mode, Natural(row.n)));
                if (!reason) throw std::logic_error("screened row no longer screens");
                switch (reason->kind) {
                    case ScreenKind::EvenDigitsSharedFactor: report.audit.screened_even_digits++; break;
                    case ScreenKind::OddBaseEvenN: report.audit.screened_odd_base_even_n++; break;
                    case ScreenKind::PrependSharedBaseFactor:
                        report.audit.screened_shared_base_factor++;
                        break;
                }
                break;
            }
            case Outcome::Prime:
            case Outcome::ProbablePrime:
                report.primes_found++;
                break;
            case Outcome::Unknown:
                report.unknowns.push_back(row.n);
                break;
        }
    }
    report.rows = std::move(rows);
    return report;
}

}  // namespace

ScanReport run_scan(unsigned long n_lo, unsigned long n_hi, Base base, Mode mode,
                    const RunConfig& cfg) {
    if (n_lo < 1 || n_lo > n_hi)
        throw std::invalid_argument("scan range must satisfy 1 <= n_lo <= n_hi");

    fs::create_directories(cfg.out_dir / "certs");
    const fs::path meta_path = cfg.out_dir / "scan_meta.json";
    const fs::path log_path = cfg.out_dir / "results.csv";

    const nlohmann::ordered_json meta = scan_meta(n_lo, n_hi, base, mode, cfg.search);
    std::vector<ScanRow> rows;
    if (cfg.resume && fs::exists(meta_path) && fs::exists(log_path)) {
        nlohmann::json previous;
        try {
            std::ifstream in(meta_path);
            previous = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error&) {
            previous = nullptr;
        }
        if (previous != nlohmann::json(meta))
            throw std::runtime_error(cfg.out_dir.string() +
                                     " holds a scan with different parameters; "
                                     "pick a fresh directory or disable resume");
        rows = load_log(log_path, n_lo, n_hi);
    }
    must_write(meta_path, meta.dump(2) + "\n");

    // rewrite the validated prefix so a torn tail line cannot corrupt the log
    std::ofstream log(log_path, std::ios::trunc);
    if (!log) throw std::system_error(errno, std::generic_category(),
                                      "cannot open " + log_path.string() + " for writing");
    log << kCsvHeader << '\n';
    for (const ScanRow& row : rows) log << csv_line(row);
    log.flush();

    const unsigned long first = rows.empty() ? n_lo : rows.back().n + 1;
    rows.reserve(n_hi - n_lo + 1);
    const unsigned workers = std::max(1u, cfg.workers);
    constexpr unsigned long block_size = 2048;

    for (unsigned long block = first; block <= n_hi; block += block_size) {
        const unsigned long block_end = std::min(n_hi, block + block_size - 1);
        std::vector<std::unique_ptr<WorkerItem>> slots(block_end - block + 1);
        std::atomic<unsigned long> next{block};
        std::mutex failure_mutex;
        std::exception_ptr failure;

        const auto work = [&] {
            try {
                for (;;) {
                    const unsigned long n = next.fetch_add(1);
                    if (n > block_end) break;
                    slots[n - block] =
                        std::make_unique<WorkerItem>(evaluate_one(n, base, mode, cfg.search));
                }
            } catch (...) {
                const std::lock_guard<std::mutex> hold(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        };
        std::vector<std::thread> pool;
        for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
        work();
        for (std::thread& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);

        // coordinator owns all output; the certificate lands before its log
        // line so a logged zero always has its file
        for (auto& slot : slots) {
            WorkerItem& item = *slot;
            if (item.row.outcome == Outcome::Zero)
                save_certificate(*item.cert, cfg.out_dir / cert_relative_path(item.row.n));
            log << csv_line(item.row);
            rows.push_back(item.row);
        }
        log.flush();
        if (!log) throw std::system_error(errno, std::generic_category(),
                                          "write failed: " + log_path.string());
    }
    log.close();

    ScanReport report = finalize(std::move(rows), n_lo, n_hi, base, mode);
    must_write(cfg.out_dir / "report.json", report_to_json(report).dump(2) + "\n");
    must_write(cfg.out_dir / "bfile.txt", report_bfile(report));
    must_write(cfg.out_dir / "unknowns.txt", report_unknowns_sidecar(report));
    return report;
}

nlohmann::ordered_json report_to_json(const ScanReport& report) {
    nlohmann::ordered_json doc;
    doc["range"] = {report.n_lo, report.n_hi};
    doc["base"] = report.base;
    doc["mode"] = mode_name(report.mode);
    auto& zeros = doc["zeros"] = nlohmann::ordered_json::array();
    for (const ZeroEntry& z : report.zeros)
        zeros.push_back({{"n", z.n}, {"k", z.k}, {"certificate", z.certificate}});
    doc["unknowns"] = report.unknowns;
    doc["primes_found"] = report.primes_found;
    doc["conjecture_audit"] = {
        {"zeros", report.audit.zeros},
        {"zeros_multiple_of_3", report.audit.zeros_multiple_of_3},
        {"screened", report.audit.screened},
        {"screened_even_digits", report.audit.screened_even_digits},
        {"screened_odd_base_even_n", report.audit.screened_odd_base_even_n},
        {"screened_shared_base_factor", report.audit.screened_shared_base_factor},
    };
    return doc;
}

ScanReport report_from_json(const nlohmann::json& doc) {
    ScanReport report;
    try {
        report.n_lo = doc.at("range").at(0).get<unsigned long>();
        report.n_hi = doc.at("range").at(1).get<unsigned long>();
        report.base = doc.at("base").get<int>();
        report.mode = mode_from_name(doc.at("mode").get<std::string>());
        for (const auto& z : doc.at("zeros"))
            report.zeros.push_back({z.at("n").get<unsigned long>(), z.at("k").get<unsigned>(),
                                    z.at("certificate").get<std::string>()});
        report.unknowns = doc.at("unknowns").get<std::vector<unsigned long>>();
        report.primes_found = doc.at("primes_found").get<unsigned long>();
        const auto& audit = doc.at("conjecture_audit");
        report.audit.zeros = audit.at("zeros").get<unsigned long>();
        report.audit.zeros_multiple_of_3 = audit.at("zeros_multiple_of_3").get<unsigned long>();
        report.audit.screened = audit.at("screened").get<unsigned long>();
        report.audit.screened_even_digits = audit.at("screened_even_digits").get<unsigned long>();
        report.audit.screened_odd_base_even_n =
            audit.at("screened_odd_base_even_n").get<unsigned long>();
        report.audit.screened_shared_base_factor =
            audit.at("screened_shared_base_factor").get<unsigned long>();
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("report: malformed document: ") + e.what());
    }
    return report;
}

std::string report_csv(const ScanReport& report) {
    std::string out{kCsvHeader};
    out += '\n';
    for (const ScanRow& row : report.rows) out += csv_line(row);
    return out;
}

std::string report_bfile(const ScanReport& report) {
    const Base base(report.base);
    std::ostringstream out;
    for (const ScanRow& row : report.rows) {
        switch (row.outcome) {
            case Outcome::Screened:
            case Outcome::Zero:
                out << row.n << " 0\n";
                break;
            case Outcome::Prime:
            case Outcome::ProbablePrime: {
                const FamilySpec spec(base, report.mode, Natural(row.n));
                const std::string value =
                    family_value(spec, Digit(row.d, base), row.m).get_str();
                if (value.size() <= 1000)
                    out << row.n << ' ' << value << '\n';
                else
                    out << "# " << row.n << ": term with d=" << row.d << ", m=" << row.m << " has "
                        << value.size() << " decimal digits, beyond the b-file value limit\n";
                break;
            }
            case Outcome::Unknown:
                break;  // b-files cannot express "unknown"; see the sidecar
        }
    }
    return out.str();
}

std::string report_unknowns_sidecar(const ScanReport& report) {
    std::ostringstream out;
    for (unsigned long n : report.unknowns) out << n << '\n';
    return out.str();
}

namespace {

unsigned long count_multiples(unsigned long lo, unsigned long hi, unsigned long q) {
    return hi / q - (lo - 1) / q;
}

// |{n in [lo, hi] : gcd(n, b) > 1}| by inclusion-exclusion over b's primes
unsigned long count_sharing_factor(unsigned long lo, unsigned long hi, unsigned base) {
    std::vector<unsigned long> primes;
    unsigned b = base;
    for (unsigned long p = 2; p * p <= b; ++p)
        if (b % p == 0) {
            primes.push_back(p);
            while (b % p == 0) b /= p;
        }
    if (b > 1) primes.push_back(b);
    unsigned long total = 0;
    for (std::size_t mask = 1; mask < (std::size_t(1) << primes.size()); ++mask) {
        unsigned long q = 1;
        const bool negative = __builtin_popcountll(mask) % 2 == 0;
        for (std::size_t i = 0; i < primes.size(); ++i)
            if (mask & (std::size_t(1) << i)) q *= primes[i];
        const unsigned long c = count_multiples(lo, hi, q);
        total = negative ? total - c : total + c;
    }
    return total;
}

}  // namespace

std::string audit_summary(const ScanReport& report) {
    std::ostringstream out;
    const char seq = report.mode == Mode::Sandwich ? 'a' : report.mode == Mode::Prepend ? 'b' : 'c';
    out << "audit: " << seq << "(n), base " << report.base << ", n in [" << report.n_lo << ", "
        << report.n_hi << "]\n";
    out << "  certified zeros: " << report.audit.zeros << ", screened: " << report.audit.screened
        << ", primes: " << report.primes_found << ", unknowns: " << report.unknowns.size() << "\n";

    std::vector<unsigned long> not_multiple_of_3;
    for (const ZeroEntry& z : report.zeros)
        if (z.n % 3 != 0) not_multiple_of_3.push_back(z.n);

    switch (report.mode) {
        case Mode::Sandwich: {
            out << "  conjecture (unscreened zeros are multiples of 3): ";
            if (not_multiple_of_3.empty()) {
                out << "all " << report.audit.zeros << " zeros are multiples of 3; 0 violations\n";
            } else {
                out << not_multiple_of_3.size() << " violations:";
                for (unsigned long n : not_multiple_of_3) out << ' ' << n;
                out << '\n';
            }
            break;
        }
        case Mode::Prepend: {
            const unsigned long expected =
                count_sharing_factor(report.n_lo, report.n_hi, unsigned(report.base));
            out << "  conjecture (" << seq << "(n)=0 exactly for "
                << (report.base == 10 ? "n even or divisible by 5"
                                      : "n sharing a factor with the base")
                << "): ";
            if (report.zeros.empty() && report.audit.screened == expected) {
                out << "holds; " << expected << " screened zeros, 0 violations";
                if (!report.unknowns.empty())
                    out << " (" << report.unknowns.size() << " n unresolved)";
                out << '\n';
            } else {
                out << report.zeros.size() << " unscreened zeros";
                for (const ZeroEntry& z : report.zeros) out << ' ' << z.n;
                if (report.audit.screened != expected)
                    out << "; screened count " << report.audit.screened << " != expected "
                        << expected;
                out << '\n';
            }
            break;
        }
        case Mode::Append: {
            out << "  conjecture (zeros are divisible by 3): ";
            if (not_multiple_of_3.empty()) {
                out << "all " << report.audit.zeros << " zeros divisible by 3; 0 violations\n";
            } else {
                out << not_multiple_of_3.size() << " violations:";
                for (unsigned long n : not_multiple_of_3) out << ' ' << n;
                out << '\n';
            }
            out << "  zeros:";
            for (const ZeroEntry& z : report.zeros) out << ' ' << z.n;
            out << '\n';
            break;
        }
    }
    return out.str();
}

}  // namespace sandwich
