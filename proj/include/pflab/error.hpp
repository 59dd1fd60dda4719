// error.hpp
// Error type for invalid inputs and failed solves.

#ifndef PFLAB_ERROR_HPP
#define PFLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace pflab {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw Error(msg);
}

} // namespace pflab

#endif
