#pragma once

#include <stdexcept>
#include <string>

namespace polar {

// Error taxonomy shared by all modules. Every failure the CLI can surface
// carries a stable machine-readable code so callers can match on it without
// parsing messages.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

struct InvalidScore : Error {
    explicit InvalidScore(const std::string& m) : Error("InvalidScore", m) {}
};

struct EmptyCorpus : Error {
    explicit EmptyCorpus(const std::string& m = "comment list is empty") : Error("EmptyCorpus", m) {}
};

struct InvalidWindow : Error {
    explicit InvalidWindow(const std::string& m) : Error("InvalidWindow", m) {}
};

struct IndexError : Error {
    explicit IndexError(const std::string& m) : Error("IndexError", m) {}
};

struct SubgroupOverflow : Error {
    explicit SubgroupOverflow(const std::string& m) : Error("SubgroupOverflow", m) {}
};

// Stage names: BackgroundMining, SubgroupExploration, SemanticAnalysis,
// PolarizationAssessment.
struct StageFailure : Error {
    StageFailure(std::string stage, const std::string& m)
        : Error("StageFailure", "[" + stage + "] " + m), stage_(std::move(stage)) {}
    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

struct TransportError : Error {
    explicit TransportError(const std::string& m) : Error("TransportError", m) {}
};

struct TimeoutError : Error {
    explicit TimeoutError(const std::string& m) : Error("TimeoutError", m) {}
};

struct ReviewFormatError : Error {
    explicit ReviewFormatError(const std::string& m) : Error("ReviewFormatError", m) {}
};

struct FormatError : Error {
    explicit FormatError(const std::string& m) : Error("FormatError", m) {}
};

struct EmptyNetwork : Error {
    explicit EmptyNetwork(const std::string& m = "CSN has no comments (N == 0)") : Error("EmptyNetwork", m) {}
};

struct EmptyEval : Error {
    explicit EmptyEval(const std::string& m = "no evaluation records selected") : Error("EmptyEval", m) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& m) : Error("ConfigError", m) {}
};

struct CheckpointError : Error {
    explicit CheckpointError(const std::string& m) : Error("CheckpointError", m) {}
};

} // namespace polar
