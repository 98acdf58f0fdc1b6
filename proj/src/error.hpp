#pragma once

#include <stdexcept>
#include <string>

namespace lmp {

enum class Errc {
    invalid_argument,
    self_loop,
    duplicate_edge,
    vertex_out_of_range,
    odd_degree_sum,
    attempts_exhausted,
    parse,
    io,
    precondition,
    no_effective_degree,
    state_space,
    config,
    internal,
};

// Library-wide exception carrying a machine-readable code plus a message.
class Error : public std::runtime_error {
public:
    Error(Errc code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::invalid_argument:    return "invalid_argument";
        case Errc::self_loop:           return "self_loop";
        case Errc::duplicate_edge:      return "duplicate_edge";
        case Errc::vertex_out_of_range: return "vertex_out_of_range";
        case Errc::odd_degree_sum:      return "odd_degree_sum";
        case Errc::attempts_exhausted:  return "attempts_exhausted";
        case Errc::parse:               return "parse";
        case Errc::io:                  return "io";
        case Errc::precondition:        return "precondition";
        case Errc::no_effective_degree: return "no_effective_degree";
        case Errc::state_space:         return "state_space";
        case Errc::config:              return "config";
        case Errc::internal:            return "internal";
    }
    return "unknown";
}

[[noreturn]] inline void fail(Errc code, const std::string& message) {
    throw Error(code, message);
}

} // namespace lmp
