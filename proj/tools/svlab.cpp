#include <svlab/evaluate.hpp>
#include <svlab/io.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

int run_script(const std::string& path, const std::string& report_path,
               const std::string& ledger_path, bool explain,
               const std::string& datasets_dir) {
    svlab::EvalOptions options;
    options.explain = explain;
    if (!datasets_dir.empty()) {
        for (const auto& entry :
             std::filesystem::directory_iterator(datasets_dir)) {
            if (entry.path().extension() != ".json") continue;
            svlab::Json doc =
                svlab::Json::parse(read_file(entry.path().string()));
            options.extra_datasets.emplace(entry.path().stem().string(),
                                           svlab::complex_from_json(doc));
        }
    }
    svlab::Script script = svlab::parse(read_file(path));
    svlab::EvalResult result = svlab::evaluate(
        script, std::filesystem::path(path).filename().string(),
        std::move(options));

    for (const auto& assertion : result.report["assertions"])
        std::cout << (assertion["pass"].get<bool>() ? "PASS " : "FAIL ")
                  << assertion["text"].get<std::string>() << "  ["
                  << assertion["detail"].get<std::string>() << "]\n";
    for (const auto& error : result.report["errors"])
        std::cout << "ERROR line " << error["line"].get<int>() << ": "
                  << error["message"].get<std::string>() << "\n";
    if (explain)
        for (const auto& line : result.explain_lines)
            std::cout << line << "\n";
    if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) throw std::runtime_error("cannot write " + report_path);
        out << result.report.dump(2) << "\n";
    }
    if (!ledger_path.empty()) {
        std::ofstream out(ledger_path);
        if (!out) throw std::runtime_error("cannot write " + ledger_path);
        out << result.ledger.dump(2) << "\n";
    }
    std::cout << (result.exit_code == 0 ? "ok" : "failed") << "\n";
    return result.exit_code;
}

int verify_ledger(const std::string& path) {
    svlab::Json doc = svlab::Json::parse(read_file(path));
    svlab::Ledger ledger = svlab::ledger_from_json(doc);
    bool all_pass = true;
    for (std::size_t id = 0; id < ledger.size(); ++id) {
        const svlab::Certificate& cert = ledger.certificate(id);
        svlab::VerifyReport report = svlab::verify(ledger, id);
        all_pass = all_pass && report.pass;
        std::cout << "#" << id << " " << cert.target << " "
                  << svlab::to_string(cert.kind) << " <= "
                  << svlab::to_string(cert.bound) << ": "
                  << (report.pass ? "ok" : "FAIL " + report.detail) << "\n";
    }
    std::cout << (all_pass ? "ok" : "failed") << "\n";
    return all_pass ? 0 : 1;
}

int format_script(const std::string& path, bool write) {
    std::string canonical = svlab::print(svlab::parse(read_file(path)));
    if (write) {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path);
        out << canonical;
    } else {
        std::cout << canonical;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified simplicial volume bounds"};
    app.require_subcommand(1);

    std::string script_path, report_path, datasets_dir, ledger_path;
    std::string ledger_out;
    bool explain = false, write = false;

    CLI::App* run = app.add_subcommand("run", "evaluate a script");
    run->add_option("script", script_path, "script file")->required();
    run->add_option("--report", report_path, "write a JSON report");
    run->add_option("--ledger", ledger_out,
                    "write the certificate ledger (JSON)");
    run->add_flag("--explain", explain, "print derivation chains");
    run->add_option("--datasets", datasets_dir,
                    "directory of extra triangulations (JSON)");

    CLI::App* verify = app.add_subcommand("verify", "re-check a ledger");
    verify->add_option("ledger", ledger_path, "ledger JSON file")->required();

    CLI::App* fmt = app.add_subcommand("fmt", "canonically format a script");
    fmt->add_option("script", script_path, "script file")->required();
    fmt->add_flag("--write", write, "rewrite the file in place");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    try {
        if (run->parsed())
            return run_script(script_path, report_path, ledger_out, explain,
                              datasets_dir);
        if (verify->parsed()) return verify_ledger(ledger_path);
        return format_script(script_path, write);
    } catch (const svlab::ScriptError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 3;
    } catch (const svlab::Json::parse_error& e) {
        std::cerr << "malformed JSON: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return run->parsed() ? 1 : 3;
    }
}
