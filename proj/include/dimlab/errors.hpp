#pragma once
#include <stdexcept>
#include <string>
#include <utility>

namespace dimlab {

// Every failure carries a stable machine-readable code (e.g. "ValueOutOfRange",
// "ClassTooLarge") next to the human message. The CLI maps resource-cap codes
// to exit 3 and everything else to exit 2.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

    static bool is_resource_cap(const std::string& code) {
        return code == "TooLarge" || code == "ClassTooLarge" || code == "StateExplosion";
    }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
    throw Error(code, msg);
}

inline void require(bool cond, const std::string& code, const std::string& msg) {
    if (!cond) fail(code, msg);
}

} // namespace dimlab
