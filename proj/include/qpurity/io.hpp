// File formats: channels and tensor vectors as JSON, scan tables as CSV.
// Complex entries are [re, im] pairs; matrices are row-major. Doubles are
// printed with 17 significant digits so emitted files parse back exactly.

#ifndef QPURITY_IO_HPP
#define QPURITY_IO_HPP

#include <iosfwd>
#include <string>

#include "qpurity/channel.hpp"

namespace qpurity {

// { "dim_in": int, "dim_out": int, "kraus": [ [[ [re,im], ... ]] ] }
// enforce_tp gates construction on the trace-preservation invariant; the
// verifier disables it to inspect broken inputs.
Channel load_channel_json(const std::string& path, bool enforce_tp = true);
std::string channel_to_json(const Channel& ch);

// { "dims": [..], "amplitudes": [[re,im], ...] } in row-major multi-index order.
TensorVector load_tensor_json(const std::string& path);
std::string tensor_to_json(const TensorVector& v);

// Shortest decimal that round-trips a double (17 significant digits).
std::string fmt17(double x);

}  // namespace qpurity

#endif
