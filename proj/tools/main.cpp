#include <iostream>

#include "CLI11.hpp"
#include "ellsurf/cli/commands.hpp"

int main(int argc, char** argv) {
    using namespace ellsurf::cli;
    CLI::App app{"Manin maps on elliptic curves over k(t)"};
    std::string command, manifest;
    Options options;
    bool table = false;
    auto names = command_names();
    app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(names));
    app.add_option("manifest", manifest, "Manifest file")->required();
    app.add_option("--n-max", options.n_max, "Largest multiple scanned for tangencies (default 30)")->check(CLI::PositiveNumber);
    app.add_option("--pole-bound", options.pole_bound, "Degree bound for find-pf (default 4)")->check(CLI::NonNegativeNumber);
    app.add_option("--point", options.point, "Only this point");
    auto* json_flag = app.add_flag("--json", "JSON output (default)");
    app.add_flag("--table", table, "Human-readable output")->excludes(json_flag);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }
    Outcome r = run_file(command, manifest, options);
    std::cout << (table ? to_table(r.document) : to_json_text(r.document));
    if (r.document.contains("error")) std::cerr << "error: " << r.document["error"]["message"].get<std::string>() << "\n";
    return r.exit_code;
}
