#pragma once

#include <stdexcept>
#include <string>

namespace boxpoly {

enum class Errc {
    parse,             // malformed input document
    invalid_argument,  // caller violated a precondition
    degree,            // operation requires lower degree
    cap_exceeded,      // configured size/budget cap hit
    assumption,        // structural assumptions not certified
    internal,          // invariant broken; indicates a bug
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::parse: return "parse";
        case Errc::invalid_argument: return "invalid_argument";
        case Errc::degree: return "degree";
        case Errc::cap_exceeded: return "cap_exceeded";
        case Errc::assumption: return "assumption";
        case Errc::internal: return "internal";
    }
    return "unknown";
}

}  // namespace boxpoly
