#pragma once

#include <stdexcept>
#include <string>

namespace nlbox {

struct NegativeProbability : std::runtime_error {
    explicit NegativeProbability(const std::string& d) : std::runtime_error("negative probability: " + d) {}
};

struct NotNormalized : std::runtime_error {
    explicit NotNormalized(const std::string& d) : std::runtime_error("column not normalized: " + d) {}
};

struct BadWeights : std::runtime_error {
    explicit BadWeights(const std::string& d) : std::runtime_error("bad mixture weights: " + d) {}
};

struct BadParam : std::runtime_error {
    explicit BadParam(const std::string& d) : std::runtime_error("bad parameter: " + d) {}
};

struct SignallingInput : std::runtime_error {
    explicit SignallingInput(const std::string& d) : std::runtime_error("signalling box: " + d) {}
};

struct SizeMismatch : std::runtime_error {
    explicit SizeMismatch(const std::string& d) : std::runtime_error("size mismatch: " + d) {}
};

struct TooLarge : std::runtime_error {
    explicit TooLarge(const std::string& d) : std::runtime_error("instance exceeds enumeration cap: " + d) {}
};

struct NotCoprime : std::runtime_error {
    explicit NotCoprime(const std::string& d) : std::runtime_error("orders not coprime: " + d) {}
};

struct DegenerateGame : std::runtime_error {
    explicit DegenerateGame(const std::string& d) : std::runtime_error("degenerate game: " + d) {}
};

struct NotCorrelatedForm : std::runtime_error {
    explicit NotCorrelatedForm(const std::string& d) : std::runtime_error("box left the correlated family: " + d) {}
};

struct ArityTooLarge : std::runtime_error {
    explicit ArityTooLarge(const std::string& d) : std::runtime_error("arity exceeds cap: " + d) {}
};

}  // namespace nlbox
