#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rcam {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    ParseError(std::size_t position, std::string token, const std::string& what)
        : Error("parse error at " + std::to_string(position) + ": " + what +
                (token.empty() ? std::string(" (end of input)") : " near '" + token + "'")),
          position(position),
          token(std::move(token)) {}

    std::size_t position;  // byte offset into the source
    std::string token;
};

// A source term or crumble mentions a variable that nothing binds.
struct OpenTermError : Error {
    using Error::Error;
};

// An EnvRef that does not resolve inside the crumble being read.
struct DanglingReference : Error {
    using Error::Error;
};

// The machine reached a configuration no reachable state can have.
struct InternalInvariant : Error {
    using Error::Error;
};

}  // namespace rcam
