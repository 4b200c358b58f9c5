#ifndef SKV_JSON_IO_HPP
#define SKV_JSON_IO_HPP

#include <json.hpp>

#include "skv/clifford.hpp"
#include "skv/forms.hpp"
#include "skv/kahler.hpp"

namespace skv {

using json = nlohmann::ordered_json;

/// Form literal: {"deg": k, "terms": [{"idx":[1,6], "coeff":"1"}, ...],
/// "eta_part": [...]}, horizontal indices 1-based and strictly increasing,
/// coefficients in the scalar literal grammar.
json form_to_json(const ModelForm<QuadScalar>& f);
Expected<ModelForm<QuadScalar>> form_from_json(const json& j, int n);

/// Spinor literal: the 2^n complex coefficient strings in basis order.
json spinor_to_json(const Spinor<QuadScalar>& s);
Expected<Spinor<QuadScalar>> spinor_from_json(const json& j);

/// Curvature input: {"n":5, "components":[{"idx":[a,b,c,d], "value":"..."}]}
/// listing a generating set; the loader fills the symmetry orbit of each
/// entry (both antisymmetries and the pair symmetry) and rejects
/// inconsistent data. Bianchi and J-invariance are left to validate().
Expected<KahlerCurvature<QuadScalar>> curvature_from_json(const json& j);
json curvature_to_json(const KahlerCurvature<QuadScalar>& R);

json frame_vector_to_json(const FrameVector<QuadScalar>& v);

}  // namespace skv

#endif
