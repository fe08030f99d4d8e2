#include "dtq/cli/run.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        dtq::fail(dtq::ErrorCode::ParseError, "cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Motivic DT invariants of quivers"};
    std::string command, quiver_path, theta, framing, relations_path, format = "table", var = "Lhalf";
    int trunc = 4;
    std::uint64_t budget = dtq::CountOptions{}.budget;
    unsigned threads = 0;
    app.add_option("command", command, "dt | framed | hilb | wallcross | dimred | count | selfcheck")->required();
    app.add_option("quiver", quiver_path, "quiver description (JSON)");
    app.add_option("--trunc,-N", trunc, "total-degree truncation")->capture_default_str();
    app.add_option("--theta", theta, "stability, e.g. 1,-1");
    app.add_option("--framing", framing, "framing vector, e.g. 1,0");
    app.add_option("--relations", relations_path, "relations file");
    app.add_option("--format", format, "table | json")->capture_default_str();
    app.add_option("--var", var, "Lhalf | x | q")->capture_default_str();
    app.add_option("--budget", budget, "enumeration budget for point counts")->capture_default_str();
    app.add_option("--threads", threads, "worker threads for point counts (0 = all cores)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    dtq::cli::JobSpec job;
    try {
        job.command = dtq::cli::parse_command(command);
        job.format = dtq::cli::parse_format(format);
        job.var = dtq::io::parse_var_mode(var);
        job.truncation = trunc;
        job.count.budget = budget;
        job.count.threads = threads;
        if (!quiver_path.empty()) {
            job.input = dtq::io::quiver_from_text(read_file(quiver_path));
            job.theta = job.input->theta;
            job.framing = job.input->framing;
        }
        if (!theta.empty())
            job.theta = dtq::Stability{dtq::cli::parse_int_list(theta)};
        if (!framing.empty()) {
            auto f = dtq::cli::parse_int_list(framing);
            for (int v : f)
                if (v < 0)
                    dtq::fail(dtq::ErrorCode::ParseError, "framing entries must be natural numbers");
            job.framing = dtq::FramingVector{std::move(f)};
        }
        if (!relations_path.empty())
            job.relations = dtq::io::relation_lines(read_file(relations_path));
    } catch (const dtq::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return dtq::cli::exit_code(e.code());
    }
    return dtq::cli::run(job, std::cout, std::cerr);
}
