#pragma once
// JSON serialization.  Schemas:
//   algebra  {"field": p, "dim": n, "basis": [labels], "unit": [n ints],
//             "table": n x n array of n-int coefficient vectors, "name": optional}
//   quiver   {"field": p, "quiver": {"vertices": v, "arrows": [[s, t, "label"]],
//             "relations": [[{"coeff": c, "path": ["a", ...]}, ...]]}}
//   module   {"algebra": <inline object or name string>, "dim": d,
//             "action": [d x d int matrices, one per algebra basis element]}
// Integers are reduced mod p on load.  Serialization is deterministic: fixed
// key order, no timestamps, so identical inputs give byte-identical output.

#include <string>

#include "ttf/algebra.hpp"
#include "ttf/classify.hpp"
#include "ttf/module.hpp"

namespace ttf {

std::string algebra_to_json(const Algebra& a, int indent = 2);
// accepts both the table form and the quiver form; throws ParseError /
// validation errors with context
AlgebraPtr algebra_from_json(const std::string& text);

AlgebraPtr load_algebra_file(const std::string& path);
void save_algebra_file(const Algebra& a, const std::string& path);

std::string module_to_json(const RightModule& m, int indent = 2);
// when "algebra" is a name string the fallback must be a matching algebra
RightModule module_from_json(const std::string& text, const AlgebraPtr& fallback = nullptr);

// Per-ideal records {ideal_basis, verdicts, criterion_trace, oracle: {d_max,
// tested, exhaustive, counterexample?}, agreement, error}.  When an ideal has
// counterexamples on both sides the left one is shown.
std::string report_to_json(const ClassificationReport& r, int indent = 2);
std::string report_to_text(const ClassificationReport& r);

std::string read_text_file(const std::string& path); // throws ParseError when unreadable
void write_text_file(const std::string& path, const std::string& text);

} // namespace ttf
