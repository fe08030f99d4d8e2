#include "dtq/cli/run.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace dtq;
using namespace dtq::cli;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run_job(const JobSpec& job)
{
    std::ostringstream out, err;
    const int code = run(job, out, err);
    return {code, out.str(), err.str()};
}

JobSpec job_for(Command c, const char* quiver, int n = 4)
{
    JobSpec j;
    j.command = c;
    j.truncation = n;
    if (quiver) {
        j.input = io::quiver_from_text(quiver);
        j.theta = j.input->theta;
        j.framing = j.input->framing;
    }
    return j;
}

const char* const jordan = R"({"vertices": ["1"], "arrows": [["1", "1", 1]]})";
const char* const k1 = R"({"vertices": ["1", "2"], "arrows": [["1", "2", 1]], "theta": [1, -1]})";

} // namespace

TEST(Cli, JordanDtTable)
{
    const auto r = run_job(job_for(Command::Dt, jordan, 6));
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("(1)  L^(1/2)"), std::string::npos) << r.out;
    for (int d = 2; d <= 6; ++d)
        EXPECT_NE(r.out.find("(" + std::to_string(d) + ")  0 "), std::string::npos) << d;
    EXPECT_NE(r.out.find("integrality  PASS"), std::string::npos);
}

TEST(Cli, JsonIsDeterministic)
{
    auto j = job_for(Command::Dt, jordan, 5);
    j.format = Format::Json;
    j.framing = FramingVector{{1}};
    const auto a = run_job(j), b = run_job(j);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    const auto parsed = io::Json::parse(a.out);
    EXPECT_EQ(parsed["status"], "ok");
    EXPECT_EQ(parsed["results"]["dt"]["values"][1]["value_Lhalf"].dump(), "[[1,1]]");
    EXPECT_EQ(parsed["checks"][1]["name"], "ptdt");

    auto w = job_for(Command::Wallcross, k1, 3);
    w.format = Format::Json;
    EXPECT_EQ(run_job(w).out, run_job(w).out);
}

TEST(Cli, Wallcross)
{
    const auto r = run_job(job_for(Command::Wallcross, k1, 4));
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("reassembly  PASS"), std::string::npos);
    EXPECT_NE(r.out.find("q - 1"), std::string::npos);
}

TEST(Cli, Selfcheck)
{
    const auto r = run_job(job_for(Command::Selfcheck, nullptr));
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
}

TEST(Cli, CountAndDimred)
{
    auto c = job_for(Command::Count, R"({"vertices": ["1"], "arrows": [["1", "1", 2]]})", 2);
    c.relations = {"a*b - b*a"};
    c.format = Format::Json;
    const auto r = run_job(c);
    EXPECT_EQ(r.code, 0);
    const auto parsed = io::Json::parse(r.out);
    EXPECT_EQ(parsed["results"]["counts"][1]["display"], "q^6 + q^5 - q^3");

    c.command = Command::Dimred;
    c.format = Format::Table;
    const auto d = run_job(c);
    EXPECT_EQ(d.code, 0);
    EXPECT_NE(d.out.find("(2)  L^(3/2)"), std::string::npos) << d.out;
}

TEST(Cli, VariableModes)
{
    auto j = job_for(Command::Hilb, jordan, 3);
    j.framing = FramingVector{{1}};
    j.var = io::VarMode::Q;
    const auto r = run_job(j);
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("(3)  q^3"), std::string::npos) << r.out;
    j.var = io::VarMode::X;
    EXPECT_NE(run_job(j).out.find("(3)  x^6"), std::string::npos);
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run_job(job_for(Command::Dt, k1)).code, 3);
    EXPECT_EQ(run_job(job_for(Command::Dt, nullptr)).code, 2);
    EXPECT_EQ(run_job(job_for(Command::Framed, jordan)).code, 3);
    auto zero = job_for(Command::Framed, jordan);
    zero.framing = FramingVector{{0}};
    EXPECT_EQ(run_job(zero).code, 3);
    auto budget = job_for(Command::Count, jordan, 3);
    budget.count.budget = 10;
    budget.relations = {"a^2"};
    EXPECT_EQ(run_job(budget).code, 5);
    auto bad_rel = job_for(Command::Count, jordan, 1);
    bad_rel.relations = {"a*"};
    EXPECT_EQ(run_job(bad_rel).code, 2);
    bad_rel.relations = {"b"};
    EXPECT_EQ(run_job(bad_rel).code, 3);
    auto wrong = job_for(Command::Dt, jordan);
    wrong.theta = Stability{{1, 2}};
    EXPECT_EQ(run_job(wrong).code, 3);
    const auto err = run_job(job_for(Command::Dt, k1));
    EXPECT_NE(err.err.find("NotSymmetric"), std::string::npos);
}

TEST(Cli, ExitCodeTable)
{
    EXPECT_EQ(exit_code(ErrorCode::ParseError), 2);
    EXPECT_EQ(exit_code(ErrorCode::NotSymmetric), 3);
    EXPECT_EQ(exit_code(ErrorCode::ZeroFraming), 3);
    EXPECT_EQ(exit_code(ErrorCode::IntegralityFailure), 4);
    EXPECT_EQ(exit_code(ErrorCode::NotPolynomialCount), 4);
    EXPECT_EQ(exit_code(ErrorCode::BudgetExceeded), 5);
}

TEST(Cli, ArgumentHelpers)
{
    EXPECT_EQ(parse_int_list("1,-1"), (std::vector<int>{1, -1}));
    EXPECT_THROW(parse_int_list("1,x"), Error);
    EXPECT_THROW(parse_int_list(""), Error);
    EXPECT_EQ(parse_command("wallcross"), Command::Wallcross);
    EXPECT_THROW(parse_command("plot"), Error);
    EXPECT_EQ(parse_format("json"), Format::Json);
}
