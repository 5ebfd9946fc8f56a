// Command-line front end: reads a model (file or stdin), runs one command,
// prints canonical output. Exit codes: 0 all checks pass, 1 a check failed,
// 2 usage or parse error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "plift/model.hpp"
#include "plift/scenario.hpp"

namespace {

const char* kUsage =
    "usage: plift [--model FILE] [--format text|json] COMMAND [ARGS]\n"
    "\n"
    "commands:\n"
    "  scenario NAME                      print a built-in model\n"
    "  check-poisson W                    Jacobi test for a bivector\n"
    "  check-semi-poisson W               transversal test, vertical foliation\n"
    "  check-graded W                     graded shape + Poisson conditions\n"
    "  check-horizontal w --conn N        horizontal-lift Poisson conditions\n"
    "  analyze W                          graded shape and extracted blocks\n"
    "  lift complete|vertical P           lift to the tangent chart\n"
    "  lift horizontal w --conn N         horizontal lift\n"
    "  lift graded-nabla w --conn C       graded nabla-lift\n"
    "  bracket schouten P Q               Schouten-Nijenhuis bracket\n"
    "  bracket symmetric G H --algebroid tangent|cotangent:w\n"
    "  bracket koszul w a b               Koszul bracket of one-forms\n"
    "  modular W --volume V|sasaki:g|riemann:g\n"
    "  curvature --conn C                 curvature components\n"
    "  compat P Q                         Schouten-compatibility test\n"
    "\n"
    "The model is read from --model FILE or stdin (scenario needs no model).\n"
    "Construction commands print the enriched model, so commands pipe:\n"
    "  plift scenario so3 | plift lift complete w | plift check-poisson w_C\n";

bool needs_model(const std::string& cmd) { return cmd != "scenario"; }

} // namespace

int main(int argc, char** argv) {
    std::string model_path;
    std::string format = "text";
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--model") {
            if (++i >= argc) {
                std::cerr << "error: --model needs a path\n";
                return 2;
            }
            model_path = argv[i];
        } else if (a == "--format") {
            if (++i >= argc || (std::string(argv[i]) != "text" && std::string(argv[i]) != "json")) {
                std::cerr << "error: --format takes text or json\n";
                return 2;
            }
            format = argv[i];
        } else if (a == "--help" || a == "-h") {
            std::cout << kUsage;
            return 0;
        } else {
            args.push_back(std::move(a));
        }
    }
    if (args.empty()) {
        std::cerr << kUsage;
        return 2;
    }

    try {
        plift::Model model;
        if (needs_model(args[0])) {
            std::string text;
            if (!model_path.empty()) {
                std::ifstream in(model_path);
                if (!in) {
                    std::cerr << "error: cannot open '" << model_path << "'\n";
                    return 2;
                }
                std::stringstream ss;
                ss << in.rdbuf();
                text = ss.str();
            } else {
                std::stringstream ss;
                ss << std::cin.rdbuf();
                text = ss.str();
            }
            model = plift::parse_model(text);
        }
        plift::CommandOutcome out = plift::run_command(model, args, format);
        std::cout << out.output;
        return out.exit_code;
    } catch (const plift::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case plift::ErrorKind::parse:
            case plift::ErrorKind::usage:
                return 2;
            default:
                return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
