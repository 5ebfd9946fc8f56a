#ifndef PLIFT_MODEL_HPP
#define PLIFT_MODEL_HPP

#include <string>
#include <variant>
#include <vector>

#include "plift/poisson_ops.hpp"

namespace plift {

// A named object parsed from a model file.
using ObjectData =
    std::variant<Multivector, OneForm, SymCovariant, LinearConnection, NonlinearConnection, Metric, VolumeForm>;

struct ModelObject {
    std::string name;
    ObjectData data;
};

// A fully resolved model: charts plus named objects, in declaration order.
class Model {
public:
    const std::vector<std::pair<std::string, ChartPtr>>& charts() const { return charts_; }
    const std::vector<ModelObject>& objects() const { return objects_; }

    ChartPtr add_chart(const std::string& name, const std::vector<std::string>& vars);
    // Resolves "M" or "T M" (tangent). Throws on unknown names.
    ChartPtr chart(const std::string& spec) const;
    bool has_chart(const std::string& name) const;

    void add_object(const std::string& name, ObjectData data);
    const ModelObject* find(const std::string& name) const;
    const ModelObject& require(const std::string& name) const;

    std::string print() const; // canonical model text

private:
    std::vector<std::pair<std::string, ChartPtr>> charts_;
    std::vector<ModelObject> objects_;
};

// Parses the model DSL; diagnostics carry line/column positions.
Model parse_model(const std::string& text);

// Parses a single expression on a chart (used by tests and the parser).
RatFunc parse_expression(const std::string& text, const ChartPtr& chart);

// Canonical text for a single object (the same form print() emits).
std::string print_object(const ModelObject& obj);

struct CommandOutcome {
    int exit_code = 0;
    std::string output;
};

// Executes one CLI command against a model. Construction commands append the
// result object and print the enriched model; checks print reports.
// format is "text" or "json".
CommandOutcome run_command(Model& model, const std::vector<std::string>& args, const std::string& format = "text");

} // namespace plift

#endif
