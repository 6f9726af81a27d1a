#include "lamenavier/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lamenavier/errors.hpp"

namespace lame {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    return out;
}

std::vector<std::vector<double>> read_csv(const std::filesystem::path& path, size_t min_cols) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path.string());
    std::string line;
    std::vector<std::vector<double>> rows;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first) {  // header
            first = false;
            continue;
        }
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (...) {
                throw IoError("bad numeric cell in " + path.string() + ": " + cell);
            }
        }
        if (row.size() < min_cols)
            throw IoError("row with too few columns in " + path.string());
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_polyline_csv(const std::filesystem::path& path, const Curve& curve) {
    std::ofstream out = open_out(path);
    out << "x,y\n";
    for (const cplx& v : curve.vertices())
        out << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
}

Curve load_polyline_csv(const std::filesystem::path& path, const Curve::Options& opt) {
    std::vector<cplx> verts;
    for (const auto& row : read_csv(path, 2)) verts.emplace_back(row[0], row[1]);
    return Curve::from_vertices(std::move(verts), opt);
}

void write_decomposition_csv(const std::filesystem::path& path, const DomainDecomposition& d) {
    std::ofstream out = open_out(path);
    out << "cx,cy,side,depth\n";
    for (const WhitneySquare& q : d.squares)
        out << format_double(q.center.real()) << ',' << format_double(q.center.imag()) << ','
            << format_double(q.side) << ',' << q.depth << '\n';
}

void write_jet_csv(const std::filesystem::path& path, const WhitneyJet& jet) {
    std::ofstream out = open_out(path);
    out << "x,y,f0_re,f0_im,f1_re,f1_im,f2_re,f2_im\n";
    for (int i = 0; i < jet.curve->n(); ++i) {
        const cplx v = jet.curve->vertex(i);
        out << format_double(v.real()) << ',' << format_double(v.imag()) << ','
            << format_double(jet.f0[size_t(i)].real()) << ','
            << format_double(jet.f0[size_t(i)].imag()) << ','
            << format_double(jet.f1[size_t(i)].real()) << ','
            << format_double(jet.f1[size_t(i)].imag()) << ','
            << format_double(jet.f2[size_t(i)].real()) << ','
            << format_double(jet.f2[size_t(i)].imag()) << '\n';
    }
}

WhitneyJet load_jet_csv(const std::filesystem::path& path, double nu, double lip_constant,
                        const std::shared_ptr<const Curve>& expected_curve) {
    WhitneyJet jet;
    jet.nu = nu;
    jet.lip_constant = lip_constant;
    std::vector<cplx> verts;
    for (const auto& row : read_csv(path, 8)) {
        verts.emplace_back(row[0], row[1]);
        jet.f0.emplace_back(row[2], row[3]);
        jet.f1.emplace_back(row[4], row[5]);
        jet.f2.emplace_back(row[6], row[7]);
    }
    if (expected_curve) {
        if (expected_curve->n() != int(verts.size()))
            throw IoError("jet file does not match the curve vertex count");
        for (int i = 0; i < expected_curve->n(); ++i)
            if (std::abs(expected_curve->vertex(i) - verts[size_t(i)]) >
                1e-9 * expected_curve->nominal_diameter())
                throw IoError("jet file vertices do not match the curve");
        jet.curve = expected_curve;
    } else {
        jet.curve = std::make_shared<const Curve>(Curve::from_vertices(std::move(verts)));
    }
    return jet;
}

void write_field_csv(const std::filesystem::path& path, const FieldOnGrid& field) {
    std::ofstream out = open_out(path);
    out << "x,y,region,re,im\n";
    for (size_t i = 0; i < field.points.size(); ++i)
        out << format_double(field.points[i].real()) << ',' << format_double(field.points[i].imag())
            << ',' << (field.regions[i] == Region::inside ? "inside" : "outside") << ','
            << format_double(field.values[i].real()) << ','
            << format_double(field.values[i].imag()) << '\n';
}

namespace {
nlohmann::ordered_json suite_json(const SuiteResult& res) {
    nlohmann::ordered_json j;
    j["suite"] = res.suite;
    j["pass"] = res.all_pass();
    j["checks"] = nlohmann::ordered_json::array();
    for (const Check& c : res.checks) {
        nlohmann::ordered_json cj;
        cj["name"] = c.name;
        cj["property"] = c.property;
        cj["measured"] = c.measured;
        cj["tolerance"] = c.tol;
        cj["comparison"] = c.higher_is_better ? ">=" : "<=";
        cj["pass"] = c.pass;
        j["checks"].push_back(cj);
    }
    return j;
}
}  // namespace

std::string suite_to_json(const SuiteResult& res) { return suite_json(res).dump(2) + "\n"; }

std::string suites_to_json(const std::vector<SuiteResult>& res) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const SuiteResult& r : res) j.push_back(suite_json(r));
    return j.dump(2) + "\n";
}

}  // namespace lame
