#pragma once

#include <filesystem>
#include <string>

#include "lamenavier/operators.hpp"
#include "lamenavier/verify.hpp"

namespace lame {

// CSV formats:
//   polyline       x,y                 one vertex per row, closed implicitly
//   decomposition  cx,cy,side,depth
//   jet            x,y,f0_re,f0_im,f1_re,f1_im,f2_re,f2_im   (curve vertex order)
//   field          x,y,region,re,im    region = inside|outside
// All numbers are written with %.17g, so identical inputs produce
// byte-identical files.

void write_polyline_csv(const std::filesystem::path& path, const Curve& curve);
Curve load_polyline_csv(const std::filesystem::path& path, const Curve::Options& opt = {});

void write_decomposition_csv(const std::filesystem::path& path, const DomainDecomposition& d);

void write_jet_csv(const std::filesystem::path& path, const WhitneyJet& jet);
// The x,y columns define the curve; `expected_curve`, when given, must match
// them vertex for vertex.
WhitneyJet load_jet_csv(const std::filesystem::path& path, double nu, double lip_constant = 0,
                        const std::shared_ptr<const Curve>& expected_curve = nullptr);

void write_field_csv(const std::filesystem::path& path, const FieldOnGrid& field);

std::string format_double(double v);
std::string suite_to_json(const SuiteResult& res);           // machine-readable report
std::string suites_to_json(const std::vector<SuiteResult>& res);

}  // namespace lame
