#ifndef APHJ_SERIALIZE_HPP
#define APHJ_SERIALIZE_HPP

#include "aphj/asymptotics.hpp"
#include "aphj/conslaw.hpp"
#include "aphj/sampled_line.hpp"
#include "aphj/spectrum_module.hpp"
#include "aphj/torus_field.hpp"
#include "aphj/trigpoly.hpp"

#include <string>

namespace aphj {

// Shortest text that reparses to the identical double; reruns must be
// byte-identical, so all numeric output funnels through here.
std::string format_double(double x);

// {dim, basis?, terms: [{re, im, freq:[{num,den}...] | k:[int...]}...]}
std::string trigpoly_to_json(const TrigPoly& p);
TrigPoly trigpoly_from_json(const std::string& text);

// {rank, dim, regime: "rational"|"declared", basis: [...], provenance}
std::string module_to_json(const SpectrumModule& m);
SpectrumModule module_from_json(const std::string& text);

// header "x,value"
std::string line_to_csv(const SampledLine& u);
SampledLine line_from_csv(const std::string& text, bool periodic = true);

// header "rank,gridN,time", one dimension line, then one value per row
std::string field_to_csv(const TorusField& f);
TorusField field_from_csv(const std::string& text);
std::string cellfield_to_csv(const CellField1D& v);

// header "t,min,max,osc[,l1ref][,probe_<label>...]"
std::string series_to_csv(const DiagnosticsSeries& s);

} // namespace aphj

#endif
