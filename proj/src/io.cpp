#include "stosep/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

namespace stosep::io {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_cells(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return out;
}

bool parse_cell(const std::string& cell, double& out) {
    if (cell.empty())
        return false;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

}  // namespace

DataMatrix read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DegenerateInput(path + ": cannot open file");

    DataMatrix X;
    std::string line;
    std::size_t line_no = 0;
    bool saw_any = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        const std::vector<std::string> cells = split_cells(line);
        if (!saw_any) {
            saw_any = true;
            // header detection: the first non-blank line is a header iff
            // any of its cells does not parse as a number
            bool all_numeric = true;
            std::vector<double> parsed(cells.size());
            for (std::size_t c = 0; c < cells.size(); ++c)
                if (!parse_cell(cells[c], parsed[c])) {
                    all_numeric = false;
                    break;
                }
            X.cols = cells.size();
            if (all_numeric) {
                X.values.insert(X.values.end(), parsed.begin(), parsed.end());
                ++X.rows;
            }
            continue;
        }
        if (cells.size() != X.cols) {
            std::ostringstream os;
            os << path << ": row " << line_no << " has " << cells.size() << " cells, expected "
               << X.cols;
            throw DegenerateInput(os.str());
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            double v;
            if (!parse_cell(cells[c], v)) {
                std::ostringstream os;
                os << path << ": row " << line_no << ", column " << c + 1 << ": cannot parse '"
                   << cells[c] << "' as a number";
                throw DegenerateInput(os.str());
            }
            X.values.push_back(v);
        }
        ++X.rows;
    }
    if (!saw_any)
        throw DegenerateInput(path + ": empty file");
    if (X.rows == 0)
        throw DegenerateInput(path + ": header only, no data rows");
    return X;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

void write_csv(const std::string& path, const DataMatrix& X,
               const std::vector<std::string>& header) {
    std::ostringstream os;
    if (!header.empty()) {
        if (header.size() != X.cols)
            throw DimensionMismatch("write_csv: header width does not match data");
        for (std::size_t c = 0; c < header.size(); ++c)
            os << (c ? "," : "") << header[c];
        os << '\n';
    }
    for (std::size_t i = 0; i < X.rows; ++i) {
        for (std::size_t c = 0; c < X.cols; ++c)
            os << (c ? "," : "") << format_double(X.at(i, c));
        os << '\n';
    }
    write_text(path, os.str());
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DegenerateInput(path + ": cannot open file for digest");
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char chunk[4096];
    while (in.read(chunk, sizeof chunk) || in.gcount() > 0) {
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(chunk[i]);
            h *= 0x100000001b3ULL;
        }
        if (!in)
            break;
    }
    std::ostringstream os;
    os << std::hex;
    for (int shift = 60; shift >= 0; shift -= 4)
        os << ((h >> shift) & 0xF);
    return os.str();
}

nlohmann::ordered_json whitening_to_json(const WhiteningModel& model) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["mean"] = model.spectral.mean;
    j["eigvals"] = model.spectral.eigvals;
    j["eigvecs"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < model.spectral.eigvals.size(); ++i) {
        const double* v = model.spectral.eigvec(i);
        j["eigvecs"].push_back(std::vector<double>(v, v + model.spectral.dim));
    }
    j["retained"] = model.retained;
    j["kappa"] = model.kappa;
    return j;
}

WhiteningModel whitening_from_json(const nlohmann::json& j) {
    WhiteningModel model;
    model.spectral.mean = j.at("mean").get<std::vector<double>>();
    model.spectral.dim = model.spectral.mean.size();
    model.spectral.eigvals = j.at("eigvals").get<std::vector<double>>();
    for (const auto& row : j.at("eigvecs")) {
        const auto v = row.get<std::vector<double>>();
        if (v.size() != model.spectral.dim)
            throw DimensionMismatch("whitening_from_json: eigvec width does not match mean");
        model.spectral.eigvecs.insert(model.spectral.eigvecs.end(), v.begin(), v.end());
    }
    if (model.spectral.eigvals.size() * model.spectral.dim != model.spectral.eigvecs.size())
        throw DimensionMismatch("whitening_from_json: eigvec/eigval count mismatch");
    model.retained = j.at("retained").get<std::size_t>();
    if (model.retained == 0 || model.retained > model.spectral.eigvals.size())
        throw DegenerateInput("whitening_from_json: retained out of range");
    model.kappa = j.at("kappa").get<double>();
    return model;
}

nlohmann::ordered_json ensemble_to_json(const corrector::CorrectorEnsemble& ens) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["alpha"] = ens.alpha;
    j["preprocessing"] = whitening_to_json(ens.preprocessing);
    j["members"] = nlohmann::ordered_json::array();
    for (const corrector::Corrector& c : ens.members) {
        nlohmann::ordered_json m;
        m["kind"] = corrector::kind_name(c.kind);
        m["threshold"] = c.threshold;
        m["weights"] = c.weights;
        j["members"].push_back(std::move(m));
    }
    return j;
}

corrector::CorrectorEnsemble ensemble_from_json(const nlohmann::json& j) {
    corrector::CorrectorEnsemble ens;
    ens.alpha = j.at("alpha").get<double>();
    ens.preprocessing = whitening_from_json(j.at("preprocessing"));
    for (const auto& m : j.at("members")) {
        corrector::Corrector c;
        c.kind = corrector::kind_from_name(m.at("kind").get<std::string>());
        c.threshold = m.at("threshold").get<double>();
        c.weights = m.at("weights").get<std::vector<double>>();
        if (c.weights.size() != ens.preprocessing.retained)
            throw DimensionMismatch("ensemble_from_json: member width does not match model");
        ens.members.push_back(std::move(c));
    }
    if (ens.members.empty())
        throw DegenerateInput("ensemble_from_json: ensemble needs at least one member");
    return ens;
}

nlohmann::ordered_json manifest_to_json(const RunManifest& m) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    j["subcommand"] = m.subcommand;
    nlohmann::ordered_json flags = nlohmann::ordered_json::object();
    for (const auto& [k, v] : m.flags)
        flags[k] = v;
    j["flags"] = std::move(flags);
    j["seed"] = m.seed;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
    for (const auto& [path, digest] : m.inputs)
        inputs[path] = digest;
    j["inputs"] = std::move(inputs);
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out)
        throw DegenerateInput(path + ": cannot open file for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DegenerateInput(path + ": cannot open file");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace stosep::io
