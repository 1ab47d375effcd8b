#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tppar {

/// Base class for all library failures. `kind()` is stable across messages so
/// callers (and the CLI exit-code mapping) can dispatch without string parsing.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

struct InvalidGrid : Error {
    explicit InvalidGrid(const std::string& m) : Error("InvalidGrid", m) {}
};
struct StateMismatch : Error {
    explicit StateMismatch(const std::string& m) : Error("StateMismatch", m) {}
};
struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& m) : Error("DimensionMismatch", m) {}
};
struct MeanNotZero : Error {
    explicit MeanNotZero(const std::string& m) : Error("MeanNotZero", m) {}
};
struct DegenerateRoot : Error {
    explicit DegenerateRoot(const std::string& m) : Error("DegenerateRoot", m) {}
};
struct RootOnRealAxis : Error {
    explicit RootOnRealAxis(const std::string& m) : Error("RootOnRealAxis", m) {}
};
struct WrongSplit : Error {
    explicit WrongSplit(const std::string& m) : Error("WrongSplit", m) {}
};
struct SingularCharMatrix : Error {
    explicit SingularCharMatrix(const std::string& m) : Error("SingularCharMatrix", m) {}
};
struct IllConditionedTrace : Error {
    explicit IllConditionedTrace(const std::string& m) : Error("IllConditionedTrace", m) {}
};
struct SymbolVanishes : Error {
    SymbolVanishes(const std::string& m, bool agmon_suspected)
        : Error("SymbolVanishes", m), agmon_suspected(agmon_suspected) {}
    bool agmon_suspected;
};
struct SingularSystem : Error {
    explicit SingularSystem(const std::string& m) : Error("SingularSystem", m) {}
};
struct SchemaError : Error {
    explicit SchemaError(const std::string& m) : Error("SchemaError", m) {}
};
struct MeanModePresent : Error {
    explicit MeanModePresent(const std::string& m) : Error("MeanModePresent", m) {}
};
struct BadMagic : Error {
    explicit BadMagic(const std::string& m) : Error("BadMagic", m) {}
};
struct SizeMismatch : Error {
    explicit SizeMismatch(const std::string& m) : Error("SizeMismatch", m) {}
};

}  // namespace tppar
