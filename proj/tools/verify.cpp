// verify <suite> [--key value]... [--out path] [--format csv|json] [--seed n] [--jobs k]
//
// exit 0: every contract of the suite holds
// exit 2: some contract failed (the report is still written)
// exit 1: bad command line, unknown suite or parameter, I/O failure

#include "rsm/suites.hpp"

#include "CLI11.hpp"

#include <iostream>

namespace {

std::string suite_help() {
    std::string s = "suites and parameters (defaults):\n";
    for (const auto& name : rsm::suites::suite_names()) {
        s += "  " + name;
        for (const auto& [k, v] : rsm::suites::suite_defaults(name)) {
            s += " --" + k + " ";
            if (const auto* d = std::get_if<double>(&v)) {
                std::ostringstream os;
                os << *d;
                s += os.str();
            } else {
                s += std::get<std::string>(v);
            }
        }
        s += "\n";
    }
    return s;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}

int main(int argc, char** argv) {
    CLI::App app{"Run a numerical verification suite and write its report."};
    app.footer(suite_help());
    app.allow_extras();

    rsm::suites::ExperimentConfig cfg;
    std::string out, format;
    app.add_option("suite", cfg.suite, "suite name")->required();
    app.add_option("--out", out, "report path (default: stdout)");
    app.add_option("--format", format, "csv or json (default: from --out extension, else json)")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--seed", cfg.seed, "seed for randomised suites (default 0)");
    app.add_option("--jobs", cfg.jobs, "worker threads (default: all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    // remaining arguments are suite parameters: --key value or --key=value
    const auto extras = app.remaining();
    for (std::size_t i = 0; i < extras.size(); ++i) {
        const std::string& a = extras[i];
        if (a.size() < 3 || a.compare(0, 2, "--") != 0) {
            std::cerr << "verify: unexpected argument '" << a << "'\n";
            return 1;
        }
        std::string key = a.substr(2), value;
        if (const auto eq = key.find('='); eq != std::string::npos) {
            value = key.substr(eq + 1);
            key.resize(eq);
        } else if (i + 1 < extras.size()) {
            value = extras[++i];
        } else {
            std::cerr << "verify: parameter --" << key << " needs a value\n";
            return 1;
        }
        if (!cfg.overrides.emplace(key, value).second) {
            std::cerr << "verify: parameter --" << key << " given twice\n";
            return 1;
        }
    }

    const auto fmt = format == "csv" || (format.empty() && ends_with(out, ".csv")) ? rsm::report::Format::csv
                                                                                   : rsm::report::Format::json;
    rsm::report::Report rep;
    try {
        rep = rsm::suites::run_suite(cfg);
    } catch (const rsm::suites::ConfigError& e) {
        std::cerr << "verify: " << e.what() << "\n";
        return 1;
    }
    try {
        rsm::report::write_report(rep, fmt, out);
    } catch (const std::exception& e) {
        std::cerr << "verify: " << e.what() << "\n";
        return 1;
    }
    if (!out.empty() && out != "-") {
        std::cerr << rep.suite << ": " << (rep.pass ? "pass" : "FAIL") << " (" << rep.rows.size() << " rows, " << out << ")\n";
    }
    return rep.pass ? 0 : 2;
}
