#pragma once

#include <string>

#include "torihull/matrix.hpp"
#include "torihull/semiclassics.hpp"
#include "torihull/spectral.hpp"
#include "torihull/toric_hull.hpp"
#include "torihull/torus.hpp"

// JSON encodings. Parsers throw InputError on malformed or inconsistent text.
namespace torihull::io {

std::string point_set_to_json(const FinitePointSet& points);
FinitePointSet point_set_from_json(const std::string& text);

/// Point-set JSON plus "components" (defaults to singletons, or to
/// eps-clusters when "epsilon_cluster" > 0), "epsilon_cluster" and "mesh".
std::string labeled_set_to_json(const LabeledSet& e);
LabeledSet labeled_set_from_json(const std::string& text);

/// {"kind":"full","d":d} or {"kind":"anchored","d":d,"base":[...],"vertices":[[...],...]}.
std::string hull_to_json(const ToricHull& h);
ToricHull hull_from_json(const std::string& text);

/// {"n":n,"re":[[...]],"im":[[...]]}
std::string matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const std::string& text);

/// A JSON array of matrices.
std::string family_to_json(const UnitaryFamily& family);
UnitaryFamily family_from_json(const std::string& text);

/// Labeled-set JSON of the joint points, one component per point.
std::string joint_spectrum_to_json(const JointSpectrum& s);

std::string convergence_to_csv(const ConvergenceResult& r);
std::string convergence_to_json(const ConvergenceResult& r);

std::string axiom_report_to_json(const AxiomReport& r);
std::string axiom_report_to_text(const AxiomReport& r);

/// printf("%.12g").
std::string format_number(double x);

}  // namespace torihull::io
