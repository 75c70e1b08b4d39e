// Acceptance suite: one criterion per function, one PASS/FAIL line each.
// Run with no arguments for the default set, --criterion N for a subset,
// --deep for the long searches (criterion 8).
#include <algorithm>
#include <chrono>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "sandwich/certificate_json.hpp"
#include "sandwich/scan.hpp"
#include "sandwich/search.hpp"

using namespace sandwich;
namespace fs = std::filesystem;

namespace {

fs::path g_work;

struct Check {
    bool ok = true;
    std::ostringstream log;

    void expect(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            log << "    failed: " << what << "\n";
        }
    }
    void note(const std::string& line) { log << "    " << line << "\n"; }
};

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = g_work / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

RunConfig scan_config(const fs::path& dir, unsigned workers) {
    RunConfig cfg;
    cfg.workers = workers;
    cfg.out_dir = dir;
    return cfg;
}

std::vector<unsigned long> zero_list(const ScanReport& report) {
    std::vector<unsigned long> out;
    for (const auto& z : report.zeros) out.push_back(z.n);
    return out;
}

std::string join(const std::vector<unsigned long>& xs) {
    std::ostringstream out;
    for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? " " : "") << xs[i];
    return out.str();
}

const DigitCovering* covering_for(const CoveringCertificate& cert, int d) {
    for (const auto& entry : cert.entries)
        if (const auto* cov = std::get_if<DigitCovering>(&entry))
            if (cov->d == d) return cov;
    return nullptr;
}

unsigned max_covering_k(const CoveringCertificate& cert) {
    unsigned k = 0;
    for (const auto& entry : cert.entries)
        if (const auto* cov = std::get_if<DigitCovering>(&entry)) k = std::max(k, cov->k);
    return k;
}

// 1. Construction exactness: the two worked examples, bit exact.
void criterion1(Check& c) {
    const FamilySpec dec(Base(10), Mode::Sandwich, Natural(45));
    c.expect(family_value(dec, Digit(2, Base(10)), 3) == Natural(22245222),
             "f(2,3,45) != 22245222");
    const FamilySpec bin(Base(2), Mode::Sandwich, Natural(34));
    c.expect(family_value(bin, Digit(1, Base(2)), 3) == Natural(3863), "f_2(1,3,34) != 3863");
    c.expect(to_base_string(family_value(bin, Digit(1, Base(2)), 3), Base(2)) == "111100010111",
             "f_2(1,3,34) binary rendering");
}

// 2. Certificate for 231: d = 1, k = 6, witnesses consistent with the
// published factorizations (divisibility exact, witness choice free).
void criterion2(Check& c) {
    c.expect(Natural(111111) == Natural(3) * 7 * 11 * 13 * 37, "111111 factorization");
    c.expect(Natural(12311) == Natural(13) * 947, "12311 factorization");
    c.expect(mpz_divisible_ui_p(Natural(111231111).get_mpz_t(), 3), "3 | 111231111");
    c.expect(mpz_divisible_ui_p(Natural("1111123111111").get_mpz_t(), 13), "13 | 1111123111111");

    const FamilySpec spec(Base(10), Mode::Sandwich, Natural(231));
    const auto cert = find_covering(spec, default_k_candidates());
    c.expect(cert.has_value(), "no covering found for 231");
    if (!cert) return;
    c.expect(verify_certificate(*cert), "certificate for 231 fails verification");
    const DigitCovering* cov = covering_for(*cert, 1);
    c.expect(cov != nullptr, "certificate for 231 lacks a d=1 covering");
    if (!cov) return;
    c.expect(cov->k == 6, "d=1 modulus is not 6");
    for (unsigned i = 0; i < 6 && i < cov->k; ++i) {
        const Natural w = family_value(spec, Digit(1, Base(10)), i);
        if (i % 2 == 1) {
            c.expect(mpz_divisible_ui_p(w.get_mpz_t(), 3) || mpz_divisible_ui_p(w.get_mpz_t(), 13),
                     "odd residue member lacks 3/13 divisor at i=" + std::to_string(i));
            c.expect(cov->witnesses[i] == 3 || cov->witnesses[i] == 13,
                     "odd residue witness outside {3,13} at i=" + std::to_string(i));
        } else {
            c.expect(mpz_divisible_ui_p(w.get_mpz_t(), 11) != 0,
                     "even residue member not divisible by 11 at i=" + std::to_string(i));
        }
    }
}

// 3. Counterexample list for n <= 25000, single-threaded, default k-set.
void criterion3(Check& c) {
    const auto report =
        run_scan(1, 25000, Base(10), Mode::Sandwich, scan_config(fresh_dir("c3"), 1));
    const std::vector<unsigned long> expected = {231,   420,   759,   2814,  6363,  9177, 10815,
                                                 12663, 15666, 18669, 19362, 21672, 24675};
    const auto zeros = zero_list(report);
    c.note("zeros: " + join(zeros));
    c.expect(zeros == expected, "zero list differs from the published thirteen");
}

// 4. Minimal-k exceptions: 6363 -> 12, 921333 -> 8, 5391498 -> 30.
void criterion4(Check& c) {
    const std::vector<unsigned> capped = {2, 3, 4, 5, 6};
    c.expect(!find_covering(FamilySpec(Base(10), Mode::Sandwich, Natural(6363)), capped),
             "6363 certified with k capped at 6");
    const struct {
        unsigned long n;
        unsigned k;
    } rows[] = {{6363, 12}, {921333, 8}, {5391498, 30}};
    for (const auto& row : rows) {
        const auto cert = find_covering(FamilySpec(Base(10), Mode::Sandwich, Natural(row.n)),
                                        default_k_candidates());
        c.expect(cert.has_value(), std::to_string(row.n) + " has no covering");
        if (!cert) continue;
        c.expect(verify_certificate(*cert), std::to_string(row.n) + " certificate unsound");
        c.expect(max_covering_k(*cert) == row.k,
                 std::to_string(row.n) + " needed k=" + std::to_string(max_covering_k(*cert)) +
                     ", expected " + std::to_string(row.k));
    }
}

// 5. Append-mode census over 1..10^6: exactly 67 zeros, per-digit k = 6,
// witnesses dividing d*111111, the nine published values included, all
// divisible by 3.
void criterion5(Check& c) {
    const auto report =
        run_scan(1, 1000000, Base(10), Mode::Append, scan_config(fresh_dir("c5"), default_workers()));
    const auto zeros = zero_list(report);
    c.note("measured zeros: " + std::to_string(zeros.size()));
    c.note(join(zeros));
    c.expect(zeros.size() == 67, "census is " + std::to_string(zeros.size()) + ", expected 67");
    for (unsigned long n : zeros)
        c.expect(n % 3 == 0, std::to_string(n) + " is not a multiple of 3");
    for (unsigned long n : {6930, 50358, 56574, 72975, 76098, 79662, 82104, 118041, 160920}) {
        const bool present = std::find(zeros.begin(), zeros.end(), n) != zeros.end();
        c.expect(present, "published zero " + std::to_string(n) + " missing from the census");
    }
    for (const auto& entry : report.zeros) {
        const auto cert = load_certificate(g_work / "c5" / entry.certificate);
        for (const auto& e : cert.entries) {
            const auto* cov = std::get_if<DigitCovering>(&e);
            if (!cov) continue;
            c.expect(cov->k == 6, std::to_string(entry.n) + " d=" + std::to_string(cov->d) +
                                      " has k=" + std::to_string(cov->k) + ", expected 6");
            const Natural bound = cov->d * Natural(111111);
            for (const Natural& g : cov->witnesses)
                c.expect(mpz_divisible_p(bound.get_mpz_t(), g.get_mpz_t()) != 0,
                         std::to_string(entry.n) + ": witness does not divide d*111111");
        }
    }
}

// 6. Conjecture audits at desk scale.
void criterion6(Check& c) {
    {
        const auto report =
            run_scan(1, 37443, Base(10), Mode::Sandwich,
                     scan_config(fresh_dir("c6_sandwich"), default_workers()));
        c.note("sandwich zeros <= 37443: " + std::to_string(report.zeros.size()));
        c.expect(report.audit.zeros == report.audit.zeros_multiple_of_3,
                 "a sandwich zero below 37443 is not a multiple of 3");
    }
    {
        RunConfig cfg = scan_config(fresh_dir("c6_prepend"), default_workers());
        cfg.search.max_m = 200;
        const auto report = run_scan(1, 10000, Base(10), Mode::Prepend, cfg);
        c.note("prepend zeros: " + std::to_string(report.zeros.size()) +
               ", screened: " + std::to_string(report.audit.screened) +
               ", unknowns: " + std::to_string(report.unknowns.size()));
        c.expect(report.zeros.empty(), "an odd n coprime to 10 was certified zero");
        c.expect(report.audit.screened == 6000, "screen census != 6000");
        c.expect(report.unknowns.empty(), "prepend search left unknowns at max_m=200");
    }
    {
        RunConfig cfg = scan_config(fresh_dir("c6_append"), default_workers());
        cfg.search.max_m = 200;
        const auto report = run_scan(1, 15392, Base(10), Mode::Append, cfg);
        const auto zeros = zero_list(report);
        c.note("append zeros <= 15392: " + join(zeros));
        c.expect(zeros == std::vector<unsigned long>{6930}, "zeros != {6930}");
    }
}

// 7. Table-1 spot checks: first three n per base row get coverings and are
// not screened.
void criterion7(Check& c) {
    const struct {
        int base;
        unsigned long ns[3];
    } rows[] = {{2, {2040, 8177, 18179}},  {4, {30, 72, 465}},
                {6, {47215, 74090, 87110}}, {8, {255, 315, 4305}},
                {12, {1155, 23695, 28875}}, {14, {46917, 9151272, 9382542}}};
    for (const auto& row : rows) {
        for (unsigned long n : row.ns) {
            const FamilySpec spec(Base(row.base), Mode::Sandwich, Natural(n));
            const std::string tag = "base " + std::to_string(row.base) + ", n=" + std::to_string(n);
            c.expect(!screen(spec).has_value(), tag + " is screened");
            const auto cert = find_covering(spec, default_k_candidates());
            c.expect(cert.has_value(), tag + " has no covering");
            if (cert) c.expect(verify_certificate(*cert), tag + " certificate unsound");
        }
    }
}

// 8. Deep searches (opt-in): a(1414) and c(6069).
void criterion8(Check& c) {
    {
        SearchConfig cfg;
        cfg.max_m = 1500;
        const auto result = eval(FamilySpec(Base(10), Mode::Sandwich, Natural(1414)), cfg);
        const auto* hit = std::get_if<PrimeHit>(&result);
        c.expect(hit != nullptr, "a(1414): no prime found");
        if (hit) {
            c.note("a(1414): d=" + std::to_string(hit->d) + " m=" + std::to_string(hit->m) +
                   " digits=" + std::to_string(hit->value.get_str().size()));
            c.expect(hit->d == 3 && hit->m == 1207, "a(1414) coordinates differ from (3, 1207)");
            c.expect(hit->value.get_str().size() == 2418, "a(1414) is not 2418 digits");
            c.expect(hit->verdict == PrimalityVerdict::ProbablePrime,
                     "a(1414) verdict is not probable-prime");
        }
    }
    {
        SearchConfig cfg;
        cfg.max_m = 2000;
        const auto result = eval(FamilySpec(Base(10), Mode::Append, Natural(6069)), cfg);
        const auto* hit = std::get_if<PrimeHit>(&result);
        c.expect(hit != nullptr, "c(6069): no prime found");
        if (hit) {
            c.note("c(6069): d=" + std::to_string(hit->d) + " m=" + std::to_string(hit->m) +
                   " digits=" + std::to_string(hit->value.get_str().size()));
            c.expect(hit->value.get_str().size() == 1529, "c(6069) is not 1529 digits");
            c.expect(hit->verdict == PrimalityVerdict::ProbablePrime,
                     "c(6069) verdict is not probable-prime");
        }
    }
}

// 9. Property floor: oracle agreement, certificate soundness sweeps, the
// concatenation divisibility law, sieve agreement, scan determinism.
void criterion9(Check& c) {
    // oracle agreement
    SearchConfig cfg;
    cfg.max_m = 4;
    unsigned long confirmed = 0;
    const auto agree = [&](const FamilySpec& spec, const std::string& tag) {
        const auto expected = brute_oracle(spec, cfg.max_m);
        if (!expected) return;
        const auto result = eval(spec, cfg);
        const auto* hit = std::get_if<PrimeHit>(&result);
        if (!hit || hit->d != expected->d || hit->m != expected->m ||
            hit->value != expected->value) {
            c.expect(false, "oracle disagreement at " + tag);
            return;
        }
        ++confirmed;
    };
    for (unsigned long n = 1; n <= 500; ++n)
        for (Mode mode : {Mode::Sandwich, Mode::Prepend, Mode::Append})
            agree(FamilySpec(Base(10), mode, Natural(n)),
                  "base 10 mode " + std::to_string(int(mode)) + " n=" + std::to_string(n));
    for (unsigned long n = 1; n <= 200; ++n) {
        agree(FamilySpec(Base(2), Mode::Sandwich, Natural(n)), "base 2 n=" + std::to_string(n));
        agree(FamilySpec(Base(4), Mode::Sandwich, Natural(n)), "base 4 n=" + std::to_string(n));
    }
    c.note("oracle agreements confirmed: " + std::to_string(confirmed));
    c.expect(confirmed > 1000, "oracle covered too few families");

    // certificate soundness sweep
    const std::vector<std::pair<Mode, unsigned long>> fixtures = {
        {Mode::Sandwich, 231},   {Mode::Sandwich, 420},   {Mode::Sandwich, 759},
        {Mode::Sandwich, 2814},  {Mode::Sandwich, 6363},  {Mode::Sandwich, 9177},
        {Mode::Sandwich, 10815}, {Mode::Sandwich, 12663}, {Mode::Sandwich, 15666},
        {Mode::Sandwich, 18669}, {Mode::Sandwich, 19362}, {Mode::Sandwich, 21672},
        {Mode::Sandwich, 24675}, {Mode::Append, 6930},    {Mode::Append, 50358},
        {Mode::Append, 56574},   {Mode::Append, 72975},   {Mode::Append, 118041}};
    for (const auto& [mode, n] : fixtures) {
        const FamilySpec spec(Base(10), mode, Natural(n));
        const auto cert = find_covering(spec, default_k_candidates());
        c.expect(cert.has_value(), "fixture " + std::to_string(n) + " lost its covering");
        if (!cert) continue;
        for (const auto& entry : cert->entries) {
            const auto* cov = std::get_if<DigitCovering>(&entry);
            if (!cov) continue;
            for (unsigned long m = 1; m <= 3 * cov->k; ++m) {
                const Natural v = family_value(spec, Digit(cov->d, Base(10)), m);
                const Natural& g = cov->witnesses[m % cov->k];
                c.expect(mpz_divisible_p(v.get_mpz_t(), g.get_mpz_t()) && v > g,
                         "soundness sweep failed at n=" + std::to_string(n) +
                             " d=" + std::to_string(cov->d) + " m=" + std::to_string(m));
            }
        }
    }

    // concatenation divisibility law
    std::mt19937_64 rng(20250808);
    const std::vector<int> primes = {2, 3, 5, 7, 11, 13, 101, 9973};
    for (int iter = 0; iter < 300; ++iter) {
        const int p = primes[rng() % primes.size()];
        const Base base(2 + int(rng() % 35));
        const Natural x = p * (1 + Natural(rng() % 100000));
        const Natural y = p * Natural(rng() % 100000);
        c.expect(mpz_divisible_ui_p(concat(x, y, base).get_mpz_t(), p) != 0,
                 "concatenation divisibility law failed");
    }

    // primality vs sieve
    {
        const std::size_t limit = 100000;
        std::vector<bool> sieve(limit + 1, true);
        sieve[0] = sieve[1] = false;
        for (std::size_t i = 2; i * i <= limit; ++i)
            if (sieve[i])
                for (std::size_t j = i * i; j <= limit; j += i) sieve[j] = false;
        bool all = true;
        for (std::size_t n = 0; n <= limit; ++n)
            if (prime_kind(is_probable_prime(Natural(n))) != sieve[n]) all = false;
        c.expect(all, "primality test disagrees with the sieve below 10^5");
    }

    // scan determinism across worker counts
    {
        const fs::path one = fresh_dir("c9_w1");
        const fs::path three = fresh_dir("c9_w3");
        run_scan(1, 300, Base(10), Mode::Sandwich, scan_config(one, 1));
        run_scan(1, 300, Base(10), Mode::Sandwich, scan_config(three, 3));
        for (const char* name : {"report.json", "bfile.txt", "results.csv", "unknowns.txt"}) {
            std::ifstream a(one / name, std::ios::binary), b(three / name, std::ios::binary);
            std::stringstream sa, sb;
            sa << a.rdbuf();
            sb << b.rdbuf();
            c.expect(sa.str() == sb.str(),
                     std::string(name) + " differs between worker counts");
        }
    }
}

struct Criterion {
    int id;
    const char* title;
    void (*run)(Check&);
};

const Criterion kCriteria[] = {
    {1, "construction exactness", criterion1},
    {2, "certificate shape for 231", criterion2},
    {3, "counterexample list to 25000", criterion3},
    {4, "minimal-k exceptions", criterion4},
    {5, "append census to 10^6", criterion5},
    {6, "conjecture audits at desk scale", criterion6},
    {7, "table-1 spot checks", criterion7},
    {8, "deep searches a(1414), c(6069)", criterion8},
    {9, "property floor", criterion9},
};

}  // namespace

int main(int argc, char** argv) {
    std::set<int> selected;
    bool deep = false;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--deep") == 0) {
            deep = true;
        } else if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            selected.insert(std::atoi(argv[++i]));
        } else if (std::strcmp(argv[i], "--work-dir") == 0 && i + 1 < argc) {
            g_work = argv[++i];
        } else {
            std::cerr << "usage: acceptance [--criterion N]... [--deep] [--work-dir DIR]\n";
            return 1;
        }
    }
    if (g_work.empty()) g_work = fs::temp_directory_path() / "sandwich_acceptance";
    fs::create_directories(g_work);

    int failures = 0;
    for (const Criterion& criterion : kCriteria) {
        const bool wanted = selected.empty() ? (criterion.id != 8 || deep)
                                             : selected.count(criterion.id) > 0;
        if (!wanted) continue;
        Check check;
        const auto start = std::chrono::steady_clock::now();
        criterion.run(check);
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (check.ok ? "PASS" : "FAIL") << "  criterion " << criterion.id << ": "
                  << criterion.title << "  [" << std::fixed << std::setprecision(1) << seconds
                  << " s]\n"
                  << check.log.str();
        if (!check.ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
