#pragma once

#include <stdexcept>
#include <string>

namespace causal {

// Raised for invalid inputs and violated preconditions. The message names
// the offending quantity (bin, sample, line) so CLI users can act on it.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Writes a one-line warning to std::clog unless warnings are silenced.
void warn(const std::string& message);
void set_warnings_enabled(bool enabled);

}  // namespace causal
