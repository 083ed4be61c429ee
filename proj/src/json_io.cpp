#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <system_error>

#include "aip/errors.hpp"
#include "aip/runner.hpp"

namespace aip::io {

namespace {

[[noreturn]] void bad(const std::string& what)
{
    throw AipError(ErrorKind::InvalidInput, what);
}

double real_from_json(const json& j, const char* what)
{
    if (!j.is_number())
        bad(std::string(what) + " must be a number");
    return j.get<double>();
}

std::vector<Complex> complex_list(const json& j, const char* what)
{
    if (!j.is_array())
        bad(std::string(what) + " must be an array of complex numbers");
    std::vector<Complex> out;
    for (const json& e : j)
        out.push_back(complex_from_json(e));
    return out;
}

const json& field(const json& j, const char* key)
{
    if (!j.contains(key))
        bad(std::string("problem is missing \"") + key + "\"");
    return j.at(key);
}

void dump_value(const json& j, std::string& out, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string pad_in(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
    case json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first)
                out += ",\n";
            first = false;
            out += pad_in + json(it.key()).dump() + ": ";
            dump_value(it.value(), out, indent + 1);
        }
        out += "\n" + pad + "}";
        return;
    }
    case json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        // Arrays of scalars stay on one line.
        bool flat = true;
        for (const json& e : j)
            flat = flat && !e.is_structured();
        out += flat ? "[" : "[\n";
        bool first = true;
        for (const json& e : j) {
            if (!first)
                out += flat ? ", " : ",\n";
            first = false;
            if (!flat)
                out += pad_in;
            dump_value(e, out, indent + 1);
        }
        out += flat ? "]" : "\n" + pad + "]";
        return;
    }
    case json::value_t::number_float: {
        const double v = j.get<double>();
        if (std::isnan(v)) {
            out += "\"nan\"";
        } else if (std::isinf(v)) {
            out += v > 0 ? "\"inf\"" : "\"-inf\"";
        } else {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
            out += buf;
        }
        return;
    }
    default:
        out += j.dump();
    }
}

} // namespace

Complex complex_from_json(const json& j)
{
    if (j.is_number())
        return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    bad("complex numbers are written as [re, im] or as a real number, got " + j.dump());
}

json complex_to_json(Complex z)
{
    return json::array({z.real(), z.imag()});
}

CMatrix matrix_from_json(const json& j)
{
    if (!j.is_array())
        bad("a matrix is an array of rows");
    const auto rows = static_cast<Index>(j.size());
    Index cols = -1;
    for (const json& r : j) {
        if (!r.is_array())
            bad("a matrix is an array of rows");
        if (cols < 0)
            cols = static_cast<Index>(r.size());
        else if (cols != static_cast<Index>(r.size()))
            bad("matrix rows have different lengths");
    }
    CMatrix m(rows, std::max<Index>(cols, 0));
    for (Index r = 0; r < rows; ++r)
        for (Index c = 0; c < m.cols(); ++c)
            m(r, c) = complex_from_json(j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
    return m;
}

json matrix_to_json(const CMatrix& m)
{
    json rows = json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Index c = 0; c < m.cols(); ++c)
            row.push_back(complex_to_json(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

AipProblem problem_from_json(const json& j)
{
    if (!j.is_object())
        bad("problem must be a JSON object");
    std::string type;
    if (j.contains("type")) {
        if (!j["type"].is_string())
            bad("problem type must be a string");
        type = j["type"].get<std::string>();
    } else if (j.contains("nodes")) {
        type = "np";
    } else if (j.contains("t0")) {
        type = "boundary";
    } else if (j.contains("zeros")) {
        type = "sarason";
    } else if (j.contains("D")) {
        type = "raw";
    } else {
        bad("cannot infer the problem type");
    }

    if (type == "np")
        return build_np({complex_list(field(j, "nodes"), "nodes"), complex_list(field(j, "values"), "values")});
    if (type == "boundary")
        return build_boundary({complex_from_json(field(j, "t0")), complex_from_json(field(j, "w0")),
                               real_from_json(field(j, "bound"), "bound")});
    if (type == "sarason") {
        const std::vector<Complex> zeros = complex_list(field(j, "zeros"), "zeros");
        if (j.contains("wstar"))
            return build_sarason({zeros, matrix_from_json(j["wstar"])});
        if (j.contains("values"))
            return build_sarason(sarason_from_np({zeros, complex_list(j["values"], "values")}));
        bad("a Sarason problem needs \"wstar\" or \"values\"");
    }
    if (type == "raw")
        return make_problem(matrix_from_json(field(j, "D")), matrix_from_json(field(j, "T1")),
                            matrix_from_json(field(j, "T2")), matrix_from_json(field(j, "M1")),
                            matrix_from_json(field(j, "M2")), j.value("special_case", false));
    bad("unknown problem type \"" + type + "\"");
}

std::string problem_type(const AipProblem& p)
{
    if (p.np() != nullptr)
        return "np";
    if (p.boundary() != nullptr)
        return "boundary";
    if (p.sarason() != nullptr)
        return "sarason";
    return "raw";
}

std::string dump_stable(const json& j)
{
    std::string out;
    dump_value(j, out, 0);
    out += "\n";
    return out;
}

void write_atomic(const std::filesystem::path& file, const std::string& contents)
{
    std::filesystem::path tmp = file;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os)
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        os << contents;
        os.flush();
        if (!os)
            throw std::runtime_error("failed writing " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, file, ec);
    if (ec)
        throw std::runtime_error("cannot rename " + tmp.string() + ": " + ec.message());
}

} // namespace aip::io
