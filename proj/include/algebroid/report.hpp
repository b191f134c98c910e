#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace algebroid {

enum class Status { pass, fail };

struct ReportEntry {
    std::string axiom;
    std::string equation;
    Status status = Status::pass;
    std::string witness;
    std::string detail;

    bool passed() const noexcept { return status == Status::pass; }
};

class Report {
public:
    void add(std::string axiom, std::string equation, bool ok, std::string witness = {},
             std::string detail = {});
    void append(const Report& other);
    void append(const Report& other, std::string_view prefix);

    const std::vector<ReportEntry>& entries() const noexcept { return entries_; }
    bool passed() const;
    std::size_t failures() const;
    const ReportEntry* find(std::string_view axiom) const;
    // True if the named entry exists and passed.
    bool passed(std::string_view axiom) const;
    std::string summary() const;

private:
    std::vector<ReportEntry> entries_;
};

// A construction that is well-formed but violates a mathematical requirement.
class MathematicalRejection : public std::runtime_error {
public:
    MathematicalRejection(std::string equation, const std::string& message, std::string hint = {})
        : std::runtime_error(message), equation_(std::move(equation)), hint_(std::move(hint)) {}

    const std::string& equation() const noexcept { return equation_; }
    const std::string& hint() const noexcept { return hint_; }

private:
    std::string equation_;
    std::string hint_;
};

// Malformed input data.
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string location, const std::string& message)
        : std::runtime_error(location + ": " + message), location_(std::move(location)) {}

    const std::string& location() const noexcept { return location_; }

private:
    std::string location_;
};

}  // namespace algebroid
