#include "algebroid/report.hpp"

#include <algorithm>
#include <sstream>

namespace algebroid {

void Report::add(std::string axiom, std::string equation, bool ok, std::string witness,
                 std::string detail) {
    entries_.push_back(ReportEntry{std::move(axiom), std::move(equation), ok ? Status::pass : Status::fail,
                                   ok ? std::string{} : std::move(witness), std::move(detail)});
}

void Report::append(const Report& other) {
    entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

void Report::append(const Report& other, std::string_view prefix) {
    for (ReportEntry entry : other.entries_) {
        entry.axiom = std::string(prefix) + entry.axiom;
        entries_.push_back(std::move(entry));
    }
}

bool Report::passed() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const ReportEntry& e) { return e.passed(); });
}

std::size_t Report::failures() const {
    return static_cast<std::size_t>(
        std::count_if(entries_.begin(), entries_.end(), [](const ReportEntry& e) { return !e.passed(); }));
}

const ReportEntry* Report::find(std::string_view axiom) const {
    const auto it = std::find_if(entries_.begin(), entries_.end(),
                                 [&](const ReportEntry& e) { return e.axiom == axiom; });
    return it == entries_.end() ? nullptr : &*it;
}

bool Report::passed(std::string_view axiom) const {
    const ReportEntry* entry = find(axiom);
    return entry != nullptr && entry->passed();
}

std::string Report::summary() const {
    std::ostringstream out;
    for (const auto& e : entries_) {
        out << (e.passed() ? "pass " : "FAIL ") << e.axiom << " [" << e.equation << "]";
        if (!e.witness.empty()) {
            out << " witness: " << e.witness;
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace algebroid
