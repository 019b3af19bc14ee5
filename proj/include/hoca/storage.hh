// storage.hh -- storage types, their configurations, tests and operations
//
// A storage type is built from counters (with or without zero-test) by
// repeatedly applying the pushdown operator or its inverse-push variant.
// Configurations are plain values; every operation is a pure partial
// function returning std::nullopt where it is undefined.

#ifndef HOCA_STORAGE_HH
#define HOCA_STORAGE_HH

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hoca {

/// Index into the alphabet of one nesting level. Index 0 is always the
/// bottom symbol, written `_`.
using Symbol = std::uint32_t;
inline constexpr Symbol kBottom = 0;
inline constexpr std::string_view kBottomName = "_";

/// Bit i is the outcome of the i-th test of StorageExpr::tests().
using TestMask = std::uint64_t;

enum class StorageKind { Counter, ZCounter, Pushdown, PushdownInv };

enum class TestKind { Top, Empty };

/// A test, addressed by how many `inner(...)` wrappers lead to it.
struct TestId {
    unsigned depth = 0;
    TestKind kind = TestKind::Top;
    Symbol symbol = kBottom; ///< only meaningful for Top

    bool operator==(const TestId&) const = default;

    static TestId top(Symbol s) { return {0, TestKind::Top, s}; }
    static TestId empty() { return {0, TestKind::Empty, kBottom}; }
    TestId wrapped() const { return {depth + 1, kind, symbol}; }
};

class StorageExpr {
public:
    static StorageExpr counter();
    static StorageExpr zcounter();
    /// `alphabet` must contain "_"; it is moved to the front.
    static StorageExpr pushdown(std::vector<std::string> alphabet, const StorageExpr& inner);
    static StorageExpr pushdown_inv(std::vector<std::string> alphabet, const StorageExpr& inner);

    StorageKind kind() const noexcept { return kind_; }
    bool is_counter() const noexcept {
        return kind_ == StorageKind::Counter || kind_ == StorageKind::ZCounter;
    }
    const StorageExpr& inner() const;
    const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
    std::size_t depth() const noexcept;

    Symbol symbol(std::string_view name) const; // throws UnknownSymbol
    std::optional<Symbol> find_symbol(std::string_view name) const;
    const std::string& symbol_name(Symbol s) const { return alphabet_.at(s); }

    /// The finite test set T, in a fixed order: Top tests of this level by
    /// symbol index, then Empty (zero-test counters), then inner tests.
    const std::vector<TestId>& tests() const noexcept { return tests_; }
    std::size_t test_index(const TestId& t) const; // throws IllTyped

    bool operator==(const StorageExpr& other) const;

private:
    StorageExpr() = default;
    void compute_tests();

    StorageKind kind_ = StorageKind::Counter;
    std::vector<std::string> alphabet_;
    std::shared_ptr<const StorageExpr> inner_;
    std::vector<TestId> tests_;
};

StorageExpr parse_storage(std::string_view text);
std::string to_string(const StorageExpr& e);

struct StackEntry;

/// Value of a storage type. Counters use `count` (the number of bottom
/// symbols above the lowest one, so the initial counter is 0). Pushdowns
/// use `stack`, bottom entry first.
struct StorageConfig {
    std::uint64_t count = 0;
    std::vector<StackEntry> stack;

    static StorageConfig counter(std::uint64_t n);
    static StorageConfig of_stack(std::vector<StackEntry> entries);

    bool operator==(const StorageConfig& other) const;
};

struct StackEntry {
    Symbol symbol = kBottom;
    StorageConfig inner;

    bool operator==(const StackEntry& other) const;
};

inline bool StorageConfig::operator==(const StorageConfig& other) const {
    return count == other.count && stack == other.stack;
}
inline bool StackEntry::operator==(const StackEntry& other) const {
    return symbol == other.symbol && inner == other.inner;
}

struct StorageConfigHash {
    std::size_t operator()(const StorageConfig& c) const noexcept;
};

enum class OpKind { PushSym, Pop, Id, Push, InvPush, Stay };

/// A storage operation. `Push(γ, f)` pushes γ with f applied to a copy of
/// the topmost inner configuration; `Push(γ)` means `Push(γ, id)`.
class OpId {
public:
    static OpId push_sym(Symbol s);
    static OpId pop();
    static OpId id();
    static OpId push(Symbol s);
    static OpId push(Symbol s, const OpId& f);
    static OpId inv_push(Symbol s);
    static OpId stay(const OpId& f);

    OpKind kind() const noexcept { return kind_; }
    Symbol symbol() const noexcept { return symbol_; }
    bool has_inner() const noexcept { return inner_ != nullptr; }
    const OpId& inner() const;
    /// Push(γ) whose inner operation is the identity.
    bool is_plain_push() const noexcept;

    bool operator==(const OpId& other) const;

private:
    OpKind kind_ = OpKind::Id;
    Symbol symbol_ = kBottom;
    std::shared_ptr<const OpId> inner_;
};

StorageConfig initial_config(const StorageExpr& e);
bool well_typed(const StorageExpr& e, const StorageConfig& c);
bool well_typed(const StorageExpr& e, const OpId& op);
bool well_typed(const StorageExpr& e, const TestId& t);

/// Exact partial semantics; std::nullopt where the operation is undefined.
std::optional<StorageConfig> apply_op(const StorageExpr& e, const OpId& op, const StorageConfig& c);
bool eval_test(const StorageExpr& e, const TestId& t, const StorageConfig& c);
/// All test outcomes at once, indexed as in e.tests().
TestMask test_mask(const StorageExpr& e, const StorageConfig& c);

/// Parsing and printing of ops, tests and configurations against a type.
OpId parse_op(const StorageExpr& e, std::string_view text);
std::string to_string(const StorageExpr& e, const OpId& op);

struct TestLiteral {
    TestId test;
    bool value = true;
};
/// `top=σ`, `top!=σ`, `empty=true|false`, `inner(T)`.
TestLiteral parse_test_literal(const StorageExpr& e, std::string_view text);
std::string to_string(const StorageExpr& e, const TestLiteral& lit);

/// Counters print as decimals, stacks as `(σ,inner)(σ,inner)...`.
StorageConfig parse_config(const StorageExpr& e, std::string_view text);
std::string to_string(const StorageExpr& e, const StorageConfig& c);

} // namespace hoca

#endif
