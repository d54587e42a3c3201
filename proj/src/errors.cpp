#include "paev/errors.hpp"

namespace paev {

ReplayError::ReplayError(std::size_t step, const std::string& what)
    : DataError("replay failed at step " + std::to_string(step) + ": " + what),
      step_(step) {}

ParseError::ParseError(std::size_t line, const std::string& what)
    : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

int exit_code(const Error& e) noexcept { return static_cast<int>(e.kind()); }

}  // namespace paev
