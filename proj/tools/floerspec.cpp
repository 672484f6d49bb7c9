/* floerspec: run a task against a workspace document.
 *
 *   floerspec <file> <task> [args...] [--seed N] [--box R]
 *             [--degree-factor 1|2] [--format text|json-like]
 *
 * Exit codes: 0 all checks pass, 1 a check fails, 2 input or usage error.
 */

#include <floer/tasks.hpp>

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"exact spectral-invariant toolbox"};
    app.name("floerspec");

    std::string file;
    std::vector<std::string> task_words;
    std::uint64_t seed = 0;
    std::int64_t box = 0;
    int degree_factor = 0;
    std::string format = "text";

    app.add_option("file", file, "workspace document")->required();
    app.add_option("task", task_words, "task and its arguments")->required()->expected(-1);
    app.add_option("--seed", seed, "seed echoed into the report");
    auto* box_opt = app.add_option("--box", box, "override the exponent box radius");
    auto* fac_opt =
        app.add_option("--degree-factor", degree_factor, "override the degree factor")
            ->check(CLI::IsMember({1, 2}));
    app.add_option("--format", format, "report format")
        ->check(CLI::IsMember({"text", "json-like"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        floer::document doc = floer::load_document(file);
        floer::run_options opt;
        opt.seed = seed;
        if (*box_opt) opt.box = box;
        if (*fac_opt) opt.degree_factor = degree_factor;
        floer::task_report rep = floer::run_task(std::move(doc), task_words, file, opt);
        std::cout << (format == "text" ? floer::render_text(rep)
                                       : floer::render_json(rep));
        return rep.failed ? 1 : 0;
    } catch (const floer::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
