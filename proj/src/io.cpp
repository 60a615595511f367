#include "qpurity/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qpurity {

namespace {

using nlohmann::json;

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError("malformed JSON in '" + path + "': " + e.what());
    }
    return j;
}

cplx parse_entry(const json& e, const char* what) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw ParseError(std::string(what) + ": complex entries must be [re, im] pairs");
    return {e[0].get<double>(), e[1].get<double>()};
}

}  // namespace

Channel load_channel_json(const std::string& path, bool enforce_tp) {
    const json j = read_json_file(path);
    try {
        if (!j.contains("dim_in") || !j.contains("dim_out") || !j.contains("kraus"))
            throw ParseError("channel file needs dim_in, dim_out and kraus");
        const int din = j.at("dim_in").get<int>();
        const int dout = j.at("dim_out").get<int>();
        if (din < 1 || dout < 1) throw ParseError("channel dimensions must be positive");
        const json& klist = j.at("kraus");
        if (!klist.is_array() || klist.empty()) throw ParseError("kraus must be a nonempty array");
        std::vector<ComplexMatrix> ops;
        for (const json& kj : klist) {
            if (!kj.is_array() || static_cast<int>(kj.size()) != dout)
                throw ParseError("each Kraus operator needs dim_out rows");
            ComplexMatrix a(dout, din);
            for (int r = 0; r < dout; ++r) {
                const json& row = kj[r];
                if (!row.is_array() || static_cast<int>(row.size()) != din)
                    throw ParseError("each Kraus row needs dim_in entries");
                for (int c = 0; c < din; ++c) a(r, c) = parse_entry(row[c], "channel");
            }
            ops.push_back(std::move(a));
        }
        return enforce_tp ? Channel(std::move(ops)) : Channel::unchecked(std::move(ops));
    } catch (const json::exception& e) {
        throw ParseError("malformed channel in '" + path + "': " + e.what());
    }
}

std::string channel_to_json(const Channel& ch) {
    json j;
    j["dim_in"] = ch.dim_in;
    j["dim_out"] = ch.dim_out;
    json klist = json::array();
    for (const auto& a : ch.kraus) {
        json rows = json::array();
        for (int r = 0; r < ch.dim_out; ++r) {
            json row = json::array();
            for (int c = 0; c < ch.dim_in; ++c) row.push_back({a(r, c).real(), a(r, c).imag()});
            rows.push_back(std::move(row));
        }
        klist.push_back(std::move(rows));
    }
    j["kraus"] = std::move(klist);
    return j.dump(2) + "\n";
}

TensorVector load_tensor_json(const std::string& path) {
    const json j = read_json_file(path);
    try {
        if (!j.contains("dims") || !j.contains("amplitudes"))
            throw ParseError("tensor file needs dims and amplitudes");
        std::vector<int> dims = j.at("dims").get<std::vector<int>>();
        const json& alist = j.at("amplitudes");
        if (!alist.is_array()) throw ParseError("amplitudes must be an array");
        std::vector<cplx> amps;
        amps.reserve(alist.size());
        for (const json& e : alist) amps.push_back(parse_entry(e, "tensor"));
        return TensorVector(std::move(dims), std::move(amps));
    } catch (const json::exception& e) {
        throw ParseError("malformed tensor in '" + path + "': " + e.what());
    }
}

std::string tensor_to_json(const TensorVector& v) {
    json j;
    j["dims"] = v.dims;
    json alist = json::array();
    for (const auto& z : v.amplitudes) alist.push_back({z.real(), z.imag()});
    j["amplitudes"] = std::move(alist);
    return j.dump(2) + "\n";
}

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace qpurity
