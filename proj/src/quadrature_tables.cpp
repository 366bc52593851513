#include <array>
#include <cmath>

#include "pdwg/polybasis.hpp"

namespace pdwg {

namespace {

struct TableEntry {
    double x, y, w;
};

// Symmetric Xiao-Gimbutas rules on the reference triangle. Weights are
// normalised to sum to 1.
// degree 10, 25 points
constexpr std::array<TableEntry, 25> kTriangle10 = {{
    {0.3333333333333333, 0.3333333333333333, 0.08361487437397393},
    {0.4951734598011705, 0.4951734598011705, 0.009792590498418303},
    {0.019139415242841296, 0.019139415242841296, 0.006385359230118654},
    {0.18448501268524653, 0.18448501268524653, 0.07863376974637727},
    {0.42823482094371884, 0.42823482094371884, 0.07524732796854398},
    {0.4951734598011705, 0.009653080397658997, 0.009792590498418303},
    {0.019139415242841296, 0.9617211695143174, 0.006385359230118654},
    {0.18448501268524653, 0.6310299746295069, 0.07863376974637727},
    {0.42823482094371884, 0.14353035811256232, 0.07524732796854398},
    {0.009653080397658997, 0.4951734598011705, 0.009792590498418303},
    {0.9617211695143174, 0.019139415242841296, 0.006385359230118654},
    {0.6310299746295069, 0.18448501268524653, 0.07863376974637727},
    {0.14353035811256232, 0.42823482094371884, 0.07524732796854398},
    {0.03472362048232748, 0.13373475510086913, 0.028962281463256342},
    {0.03758272734119169, 0.3266931362813369, 0.038739049086018905},
    {0.8315416244168035, 0.03472362048232748, 0.028962281463256342},
    {0.6357241363774714, 0.03758272734119169, 0.038739049086018905},
    {0.13373475510086913, 0.8315416244168035, 0.028962281463256342},
    {0.3266931362813369, 0.6357241363774714, 0.038739049086018905},
    {0.13373475510086913, 0.03472362048232748, 0.028962281463256342},
    {0.3266931362813369, 0.03758272734119169, 0.038739049086018905},
    {0.8315416244168035, 0.13373475510086913, 0.028962281463256342},
    {0.6357241363774714, 0.3266931362813369, 0.038739049086018905},
    {0.03472362048232748, 0.8315416244168035, 0.028962281463256342},
    {0.03758272734119169, 0.6357241363774714, 0.038739049086018905},
}};

// degree 11, 28 points
constexpr std::array<TableEntry, 28> kTriangle11 = {{
    {0.3333333333333333, 0.3333333333333333, 0.08144513470935129},
    {0.030846895635588123, 0.030846895635588123, 0.012249296950707964},
    {0.49878016517846074, 0.49878016517846074, 0.012465491873881381},
    {0.11320782728669404, 0.11320782728669404, 0.04012924238130832},
    {0.4366550163931761, 0.4366550163931761, 0.06309487215989869},
    {0.21448345861926937, 0.21448345861926937, 0.06784510774369515},
    {0.030846895635588123, 0.9383062087288238, 0.012249296950707964},
    {0.49878016517846074, 0.0024396696430785125, 0.012465491873881381},
    {0.11320782728669404, 0.7735843454266119, 0.04012924238130832},
    {0.4366550163931761, 0.12668996721364778, 0.06309487215989869},
    {0.21448345861926937, 0.5710330827614613, 0.06784510774369515},
    {0.9383062087288238, 0.030846895635588123, 0.012249296950707964},
    {0.0024396696430785125, 0.49878016517846074, 0.012465491873881381},
    {0.7735843454266119, 0.11320782728669404, 0.04012924238130832},
    {0.12668996721364778, 0.4366550163931761, 0.06309487215989869},
    {0.5710330827614613, 0.21448345861926937, 0.06784510774369515},
    {0.014366662569555624, 0.1593036198376935, 0.014557623337809246},
    {0.04766406697215078, 0.31063121631346313, 0.04064284865588647},
    {0.8263297175927509, 0.014366662569555624, 0.014557623337809246},
    {0.6417047167143861, 0.04766406697215078, 0.04064284865588647},
    {0.1593036198376935, 0.8263297175927509, 0.014557623337809246},
    {0.31063121631346313, 0.6417047167143861, 0.04064284865588647},
    {0.1593036198376935, 0.014366662569555624, 0.014557623337809246},
    {0.31063121631346313, 0.04766406697215078, 0.04064284865588647},
    {0.8263297175927509, 0.1593036198376935, 0.014557623337809246},
    {0.6417047167143861, 0.31063121631346313, 0.04064284865588647},
    {0.014366662569555624, 0.8263297175927509, 0.014557623337809246},
    {0.04766406697215078, 0.6417047167143861, 0.04064284865588647},
}};

// degree 12, 33 points
constexpr std::array<TableEntry, 33> kTriangle12 = {{
    {0.27146250701492614, 0.27146250701492614, 0.06254121319590276},
    {0.10925782765935432, 0.10925782765935432, 0.02848605206887755},
    {0.4401116486585931, 0.4401116486585931, 0.04991833492806095},
    {0.4882037509455415, 0.4882037509455415, 0.024266838081452035},
    {0.02464636343633564, 0.02464636343633564, 0.007931642509973639},
    {0.27146250701492614, 0.45707498597014773, 0.06254121319590276},
    {0.10925782765935432, 0.7814843446812914, 0.02848605206887755},
    {0.4401116486585931, 0.11977670268281382, 0.04991833492806095},
    {0.4882037509455415, 0.02359249810891695, 0.024266838081452035},
    {0.02464636343633564, 0.9507072731273287, 0.007931642509973639},
    {0.45707498597014773, 0.27146250701492614, 0.06254121319590276},
    {0.7814843446812914, 0.10925782765935432, 0.02848605206887755},
    {0.11977670268281382, 0.4401116486585931, 0.04991833492806095},
    {0.02359249810891695, 0.4882037509455415, 0.024266838081452035},
    {0.9507072731273287, 0.02464636343633564, 0.007931642509973639},
    {0.1162960196779266, 0.25545422863851736, 0.04322736365941421},
    {0.021382490256170623, 0.12727971723358936, 0.015083677576511441},
    {0.023034156355267166, 0.29165567973834094, 0.02178358503860756},
    {0.6282497516835561, 0.1162960196779266, 0.04322736365941421},
    {0.85133779251024, 0.021382490256170623, 0.015083677576511441},
    {0.6853101639063919, 0.023034156355267166, 0.02178358503860756},
    {0.25545422863851736, 0.6282497516835561, 0.04322736365941421},
    {0.12727971723358936, 0.85133779251024, 0.015083677576511441},
    {0.29165567973834094, 0.6853101639063919, 0.02178358503860756},
    {0.25545422863851736, 0.1162960196779266, 0.04322736365941421},
    {0.12727971723358936, 0.021382490256170623, 0.015083677576511441},
    {0.29165567973834094, 0.023034156355267166, 0.02178358503860756},
    {0.6282497516835561, 0.25545422863851736, 0.04322736365941421},
    {0.85133779251024, 0.12727971723358936, 0.015083677576511441},
    {0.6853101639063919, 0.29165567973834094, 0.02178358503860756},
    {0.1162960196779266, 0.6282497516835561, 0.04322736365941421},
    {0.021382490256170623, 0.85133779251024, 0.015083677576511441},
    {0.023034156355267166, 0.6853101639063919, 0.02178358503860756},
}};

// degree 13, 37 points
constexpr std::array<TableEntry, 37> kTriangle13 = {{
    {0.3333333333333333, 0.3333333333333333, 0.05162264666429082},
    {0.4961358947410461, 0.4961358947410461, 0.009941476361072588},
    {0.4696086896534919, 0.4696086896534919, 0.03278124160372298},
    {0.23111028494908226, 0.23111028494908226, 0.04606240959277825},
    {0.4144775702790546, 0.4144775702790546, 0.0469470955421552},
    {0.11355991257213327, 0.11355991257213327, 0.030903097975759793},
    {0.024895931491216494, 0.024895931491216494, 0.008029399795258423},
    {0.4961358947410461, 0.007728210517907841, 0.009941476361072588},
    {0.4696086896534919, 0.06078262069301621, 0.03278124160372298},
    {0.23111028494908226, 0.5377794301018355, 0.04606240959277825},
    {0.4144775702790546, 0.17104485944189085, 0.0469470955421552},
    {0.11355991257213327, 0.7728801748557335, 0.030903097975759793},
    {0.024895931491216494, 0.950208137017567, 0.008029399795258423},
    {0.007728210517907841, 0.4961358947410461, 0.009941476361072588},
    {0.06078262069301621, 0.4696086896534919, 0.03278124160372298},
    {0.5377794301018355, 0.23111028494908226, 0.04606240959277825},
    {0.17104485944189085, 0.4144775702790546, 0.0469470955421552},
    {0.7728801748557335, 0.11355991257213327, 0.030903097975759793},
    {0.950208137017567, 0.024895931491216494, 0.008029399795258423},
    {0.01898800438375904, 0.2920786885766364, 0.01812549864620088},
    {0.09773603106601653, 0.26674525331035115, 0.037211960457261536},
    {0.021966344206529244, 0.1267997757838373, 0.015393072683782177},
    {0.6889333070396046, 0.01898800438375904, 0.01812549864620088},
    {0.6355187156236324, 0.09773603106601653, 0.037211960457261536},
    {0.8512338800096335, 0.021966344206529244, 0.015393072683782177},
    {0.2920786885766364, 0.6889333070396046, 0.01812549864620088},
    {0.26674525331035115, 0.6355187156236324, 0.037211960457261536},
    {0.1267997757838373, 0.8512338800096335, 0.015393072683782177},
    {0.2920786885766364, 0.01898800438375904, 0.01812549864620088},
    {0.26674525331035115, 0.09773603106601653, 0.037211960457261536},
    {0.1267997757838373, 0.021966344206529244, 0.015393072683782177},
    {0.6889333070396046, 0.2920786885766364, 0.01812549864620088},
    {0.6355187156236324, 0.26674525331035115, 0.037211960457261536},
    {0.8512338800096335, 0.1267997757838373, 0.015393072683782177},
    {0.01898800438375904, 0.6889333070396046, 0.01812549864620088},
    {0.09773603106601653, 0.6355187156236324, 0.037211960457261536},
    {0.021966344206529244, 0.8512338800096335, 0.015393072683782177},
}};

// degree 14, 42 points
constexpr std::array<TableEntry, 42> kTriangle14 = {{
    {0.41764471934045394, 0.41764471934045394, 0.032788353544125355},
    {0.0617998830908727, 0.0617998830908727, 0.014433699669776668},
    {0.2734775283088387, 0.2734775283088387, 0.051774104507291585},
    {0.1772055324125435, 0.1772055324125435, 0.04216258873699302},
    {0.0193909612487011, 0.0193909612487011, 0.004923403602400082},
    {0.4889639103621786, 0.4889639103621786, 0.021883581369428893},
    {0.41764471934045394, 0.16471056131909212, 0.032788353544125355},
    {0.0617998830908727, 0.8764002338182546, 0.014433699669776668},
    {0.2734775283088387, 0.4530449433823226, 0.051774104507291585},
    {0.1772055324125435, 0.645588935174913, 0.04216258873699302},
    {0.0193909612487011, 0.9612180775025978, 0.004923403602400082},
    {0.4889639103621786, 0.022072179275642756, 0.021883581369428893},
    {0.16471056131909212, 0.41764471934045394, 0.032788353544125355},
    {0.8764002338182546, 0.0617998830908727, 0.014433699669776668},
    {0.4530449433823226, 0.2734775283088387, 0.051774104507291585},
    {0.645588935174913, 0.1772055324125435, 0.04216258873699302},
    {0.9612180775025978, 0.0193909612487011, 0.004923403602400082},
    {0.022072179275642756, 0.4889639103621786, 0.021883581369428893},
    {0.014646950055654471, 0.29837288213625773, 0.014436308113533842},
    {0.09291624935697185, 0.336861459796345, 0.038571510787060684},
    {0.05712475740364799, 0.17226668782135557, 0.024665753212563677},
    {0.001268330932872076, 0.11897449769695682, 0.005010228838500672},
    {0.6869801678080878, 0.014646950055654471, 0.014436308113533842},
    {0.5702222908466832, 0.09291624935697185, 0.038571510787060684},
    {0.7706085547749965, 0.05712475740364799, 0.024665753212563677},
    {0.8797571713701712, 0.001268330932872076, 0.005010228838500672},
    {0.29837288213625773, 0.6869801678080878, 0.014436308113533842},
    {0.336861459796345, 0.5702222908466832, 0.038571510787060684},
    {0.17226668782135557, 0.7706085547749965, 0.024665753212563677},
    {0.11897449769695682, 0.8797571713701712, 0.005010228838500672},
    {0.29837288213625773, 0.014646950055654471, 0.014436308113533842},
    {0.336861459796345, 0.09291624935697185, 0.038571510787060684},
    {0.17226668782135557, 0.05712475740364799, 0.024665753212563677},
    {0.11897449769695682, 0.001268330932872076, 0.005010228838500672},
    {0.6869801678080878, 0.29837288213625773, 0.014436308113533842},
    {0.5702222908466832, 0.336861459796345, 0.038571510787060684},
    {0.7706085547749965, 0.17226668782135557, 0.024665753212563677},
    {0.8797571713701712, 0.11897449769695682, 0.005010228838500672},
    {0.014646950055654471, 0.6869801678080878, 0.014436308113533842},
    {0.09291624935697185, 0.5702222908466832, 0.038571510787060684},
    {0.05712475740364799, 0.7706085547749965, 0.024665753212563677},
    {0.001268330932872076, 0.8797571713701712, 0.005010228838500672},
}};


template <std::size_t N>
TriangleRule from_table(const std::array<TableEntry, N>& table, int exactness)
{
    TriangleRule rule;
    rule.exactness = exactness;
    for (const auto& e : table) {
        rule.points.push_back({e.x, e.y});
        rule.weights.push_back(0.5 * e.w);
    }
    return rule;
}

TriangleRule centroid_rule()
{
    TriangleRule rule;
    rule.exactness = 1;
    rule.points = {{1.0 / 3.0, 1.0 / 3.0}};
    rule.weights = {0.5};
    return rule;
}

TriangleRule midpoint_rule()
{
    TriangleRule rule;
    rule.exactness = 2;
    rule.points = {{0.5, 0.0}, {0.5, 0.5}, {0.0, 0.5}};
    rule.weights = {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};
    return rule;
}

// Radon's 7-point degree-5 rule.
TriangleRule radon_rule()
{
    const double s = std::sqrt(15.0);
    const double a1 = (6.0 - s) / 21.0, b1 = (9.0 + 2.0 * s) / 21.0;
    const double a2 = (6.0 + s) / 21.0, b2 = (9.0 - 2.0 * s) / 21.0;
    const double w0 = 9.0 / 80.0;
    const double w1 = (155.0 - s) / 2400.0;
    const double w2 = (155.0 + s) / 2400.0;
    TriangleRule rule;
    rule.exactness = 5;
    rule.points = {{1.0 / 3.0, 1.0 / 3.0},
                   {a1, a1}, {b1, a1}, {a1, b1},
                   {a2, a2}, {b2, a2}, {a2, b2}};
    rule.weights = {w0, w1, w1, w1, w2, w2, w2};
    return rule;
}

} // namespace

TriangleRule triangle_table_rule(int degree)
{
    if (degree <= 1)
        return centroid_rule();
    if (degree == 2)
        return midpoint_rule();
    if (degree <= 5)
        return radon_rule();
    if (degree <= 10)
        return from_table(kTriangle10, 10);
    switch (degree) {
    case 11: return from_table(kTriangle11, 11);
    case 12: return from_table(kTriangle12, 12);
    case 13: return from_table(kTriangle13, 13);
    default: return from_table(kTriangle14, 14);
    }
}

} // namespace pdwg
