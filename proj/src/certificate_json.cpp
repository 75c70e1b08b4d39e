#include "sandwich/certificate_json.hpp"

#include <fstream>

namespace sandwich {

namespace {

const char* screen_kind_name(ScreenKind kind) {
    switch (kind) {
        case ScreenKind::EvenDigitsSharedFactor: return "even_digits_shared_factor";
        case ScreenKind::OddBaseEvenN: return "odd_base_even_n";
        case ScreenKind::PrependSharedBaseFactor: return "prepend_shared_base_factor";
    }
    throw std::logic_error("bad screen kind");
}

ScreenKind screen_kind_from_name(const std::string& name) {
    if (name == "even_digits_shared_factor") return ScreenKind::EvenDigitsSharedFactor;
    if (name == "odd_base_even_n") return ScreenKind::OddBaseEvenN;
    if (name == "prepend_shared_base_factor") return ScreenKind::PrependSharedBaseFactor;
    throw std::runtime_error("certificate: unknown screen kind \"" + name + "\"");
}

Natural natural_from_string(const std::string& text, const char* field) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        throw std::runtime_error(std::string("certificate: field \"") + field +
                                 "\" must be a decimal string");
    return Natural(text, 10);
}

[[noreturn]] void fail(const std::string& what) { throw std::runtime_error("certificate: " + what); }

const nlohmann::json& need(const nlohmann::json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end()) fail(std::string("missing field \"") + key + "\"");
    return *it;
}

}  // namespace

std::string mode_name(Mode mode) {
    switch (mode) {
        case Mode::Sandwich: return "sandwich";
        case Mode::Prepend: return "prepend";
        case Mode::Append: return "append";
    }
    throw std::logic_error("bad mode");
}

Mode mode_from_name(const std::string& name) {
    if (name == "sandwich") return Mode::Sandwich;
    if (name == "prepend") return Mode::Prepend;
    if (name == "append") return Mode::Append;
    throw std::runtime_error("unknown mode \"" + name + "\" (expected sandwich|prepend|append)");
}

nlohmann::ordered_json certificate_to_json(const CoveringCertificate& cert) {
    nlohmann::ordered_json doc;
    doc["base"] = cert.spec.base.value();
    doc["mode"] = mode_name(cert.spec.mode);
    doc["n"] = cert.spec.n.get_str();
    if (cert.screen) {
        doc["screen"] = {{"kind", screen_kind_name(cert.screen->kind)},
                         {"witness", cert.screen->witness.get_str()}};
    }
    auto& entries = doc["entries"] = nlohmann::ordered_json::array();
    for (const auto& entry : cert.entries) {
        nlohmann::ordered_json e;
        if (const auto* autod = std::get_if<AutomaticDivisor>(&entry)) {
            e["d"] = autod->d;
            e["kind"] = "auto";
            e["p"] = autod->p;
        } else {
            const auto& cov = std::get<DigitCovering>(entry);
            e["d"] = cov.d;
            e["kind"] = "covering";
            e["k"] = cov.k;
            auto& rows = e["witnesses"] = nlohmann::ordered_json::array();
            for (unsigned i = 0; i < cov.witnesses.size(); ++i)
                rows.push_back({{"i", i}, {"g", cov.witnesses[i].get_str()}});
        }
        entries.push_back(std::move(e));
    }
    return doc;
}

CoveringCertificate certificate_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) fail("document must be a JSON object");
    const auto& base_field = need(doc, "base");
    if (!base_field.is_number_integer()) fail("field \"base\" must be an integer");
    const auto& mode_field = need(doc, "mode");
    if (!mode_field.is_string()) fail("field \"mode\" must be a string");
    const auto& n_field = need(doc, "n");
    if (!n_field.is_string()) fail("field \"n\" must be a string");

    FamilySpec spec(Base(base_field.get<int>()), mode_from_name(mode_field.get<std::string>()),
                    natural_from_string(n_field.get<std::string>(), "n"));
    CoveringCertificate cert{std::move(spec), std::nullopt, {}};

    if (auto it = doc.find("screen"); it != doc.end()) {
        if (!it->is_object()) fail("field \"screen\" must be an object");
        const auto& kind = need(*it, "kind");
        const auto& witness = need(*it, "witness");
        if (!kind.is_string() || !witness.is_string()) fail("screen fields must be strings");
        cert.screen = ScreenReason{screen_kind_from_name(kind.get<std::string>()),
                                   natural_from_string(witness.get<std::string>(), "witness")};
    }

    const auto& entries = need(doc, "entries");
    if (!entries.is_array()) fail("field \"entries\" must be an array");
    for (const auto& e : entries) {
        if (!e.is_object()) fail("entries must be objects");
        const auto& d_field = need(e, "d");
        const auto& kind_field = need(e, "kind");
        if (!d_field.is_number_integer()) fail("entry field \"d\" must be an integer");
        if (!kind_field.is_string()) fail("entry field \"kind\" must be a string");
        const int d = d_field.get<int>();
        const std::string kind = kind_field.get<std::string>();
        if (kind == "auto") {
            const auto& p = need(e, "p");
            if (!p.is_number_unsigned()) fail("entry field \"p\" must be a non-negative integer");
            cert.entries.push_back(AutomaticDivisor{d, p.get<std::uint64_t>()});
        } else if (kind == "covering") {
            const auto& k_field = need(e, "k");
            if (!k_field.is_number_unsigned()) fail("entry field \"k\" must be a non-negative integer");
            const unsigned k = k_field.get<unsigned>();
            const auto& rows = need(e, "witnesses");
            if (!rows.is_array()) fail("entry field \"witnesses\" must be an array");
            if (rows.size() != k) fail("witness table must have exactly k rows");
            std::vector<Natural> witnesses(k);
            std::vector<bool> filled(k, false);
            for (const auto& row : rows) {
                if (!row.is_object()) fail("witness rows must be objects");
                const auto& i_field = need(row, "i");
                const auto& g_field = need(row, "g");
                if (!i_field.is_number_unsigned()) fail("witness field \"i\" must be a residue index");
                if (!g_field.is_string()) fail("witness field \"g\" must be a decimal string");
                const unsigned i = i_field.get<unsigned>();
                if (i >= k) fail("witness residue index out of range");
                if (filled[i]) fail("duplicate witness residue index");
                filled[i] = true;
                witnesses[i] = natural_from_string(g_field.get<std::string>(), "g");
            }
            cert.entries.push_back(DigitCovering{d, k, std::move(witnesses)});
        } else {
            fail("entry kind must be \"auto\" or \"covering\"");
        }
    }
    return cert;
}

void save_certificate(const CoveringCertificate& cert, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::system_error(errno, std::generic_category(),
                                      "cannot open " + path.string() + " for writing");
    out << certificate_to_json(cert).dump(2) << '\n';
    out.flush();
    if (!out) throw std::system_error(errno, std::generic_category(), "write failed: " + path.string());
}

CoveringCertificate load_certificate(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::system_error(errno, std::generic_category(),
                                     "cannot open " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error("certificate: " + path.string() + " is not valid JSON: " + e.what());
    }
    return certificate_from_json(doc);
}

}  // namespace sandwich
