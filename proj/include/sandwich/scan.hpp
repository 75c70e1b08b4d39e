#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "sandwich/search.hpp"

namespace sandwich {

enum class Outcome { Screened, Zero, Prime, ProbablePrime, Unknown };

const char* outcome_name(Outcome o);

// One line of the append-only result log (= results.csv):
// n,outcome,d,m,digits,witness_k
struct ScanRow {
    unsigned long n = 0;
    Outcome outcome = Outcome::Unknown;
    int d = 0;             // primes only
    unsigned long m = 0;   // primes only
    unsigned digits = 0;   // primes only: base-b digit count of the value
    unsigned witness_k = 0;  // zeros only: largest per-digit covering modulus
};

struct ZeroEntry {
    unsigned long n;
    unsigned k;
    std::string certificate;  // path relative to the output directory
};

struct ConjectureTallies {
    unsigned long zeros = 0;
    unsigned long zeros_multiple_of_3 = 0;
    unsigned long screened = 0;
    unsigned long screened_even_digits = 0;
    unsigned long screened_odd_base_even_n = 0;
    unsigned long screened_shared_base_factor = 0;
};

// zeros/unknowns/primes partition the unscreened part of the range.
// Screened n (closed-form zeros) are tallied but kept off the zero list,
// matching how the census excludes them.
struct ScanReport {
    unsigned long n_lo = 0;
    unsigned long n_hi = 0;
    int base = 10;
    Mode mode = Mode::Sandwich;
    std::vector<ZeroEntry> zeros;           // ascending n
    std::vector<unsigned long> unknowns;    // ascending
    unsigned long primes_found = 0;
    ConjectureTallies audit;
    std::vector<ScanRow> rows;  // ascending, one per scanned n (not serialized)
};

enum class ReportFormat { Json, BFile, Csv };

unsigned default_workers();  // SANDWICH_WORKERS env var, else hardware threads

SearchConfig scan_search_defaults();  // per-n max_m = 60

struct RunConfig {
    unsigned workers = default_workers();
    SearchConfig search = scan_search_defaults();
    std::filesystem::path out_dir = "scan_out";
    ReportFormat format = ReportFormat::Json;
    bool resume = true;
};

// Partitions [n_lo, n_hi] across workers and writes, under cfg.out_dir:
//   results.csv   append-only result log, ascending n (resume state)
//   certs/cert_<n>.json  one certificate per unscreened zero
//   report.json, bfile.txt, unknowns.txt
// The emitted files are byte-identical for any worker count.
ScanReport run_scan(unsigned long n_lo, unsigned long n_hi, Base base, Mode mode,
                    const RunConfig& cfg);

nlohmann::ordered_json report_to_json(const ScanReport& report);
ScanReport report_from_json(const nlohmann::json& doc);  // rows stay empty

std::string report_csv(const ScanReport& report);

// OEIS two-column format "n a(n)". Zeros (screened or certified) print 0;
// primes print their decimal value up to 1000 digits and a reference
// comment beyond that; unknowns are omitted here and listed in the sidecar.
std::string report_bfile(const ScanReport& report);
std::string report_unknowns_sidecar(const ScanReport& report);

// Per-conjecture audit lines for the scanned range.
std::string audit_summary(const ScanReport& report);

}  // namespace sandwich
