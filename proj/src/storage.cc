// storage.cc -- storage types, configurations, tests and operations

#include "hoca/storage.hh"

#include "hoca/error.hh"
#include "text.hh"

#include <algorithm>
#include <functional>
#include <sstream>

namespace hoca {

// ---------------------------------------------------------------------------
// StorageExpr

StorageExpr StorageExpr::counter() {
    StorageExpr e;
    e.kind_ = StorageKind::Counter;
    e.alphabet_ = {std::string(kBottomName)};
    e.compute_tests();
    return e;
}

StorageExpr StorageExpr::zcounter() {
    StorageExpr e;
    e.kind_ = StorageKind::ZCounter;
    e.alphabet_ = {std::string(kBottomName)};
    e.compute_tests();
    return e;
}

static std::vector<std::string> canonical_alphabet(std::vector<std::string> alphabet) {
    auto bottom = std::find(alphabet.begin(), alphabet.end(), kBottomName);
    if (bottom == alphabet.end())
        throw IllTyped("pushdown alphabet must contain the bottom symbol '_'");
    std::rotate(alphabet.begin(), bottom, bottom + 1);
    for (std::size_t i = 0; i < alphabet.size(); ++i)
        for (std::size_t j = i + 1; j < alphabet.size(); ++j)
            if (alphabet[i] == alphabet[j])
                throw IllTyped("duplicate pushdown symbol '" + alphabet[i] + "'");
    return alphabet;
}

StorageExpr StorageExpr::pushdown(std::vector<std::string> alphabet, const StorageExpr& inner) {
    StorageExpr e;
    e.kind_ = StorageKind::Pushdown;
    e.alphabet_ = canonical_alphabet(std::move(alphabet));
    e.inner_ = std::make_shared<const StorageExpr>(inner);
    e.compute_tests();
    return e;
}

StorageExpr StorageExpr::pushdown_inv(std::vector<std::string> alphabet, const StorageExpr& inner) {
    StorageExpr e = pushdown(std::move(alphabet), inner);
    e.kind_ = StorageKind::PushdownInv;
    return e;
}

const StorageExpr& StorageExpr::inner() const {
    if (!inner_)
        throw IllTyped("counter storage has no inner storage");
    return *inner_;
}

std::size_t StorageExpr::depth() const noexcept {
    return inner_ ? 1 + inner_->depth() : 0;
}

std::optional<Symbol> StorageExpr::find_symbol(std::string_view name) const {
    for (std::size_t i = 0; i < alphabet_.size(); ++i)
        if (alphabet_[i] == name)
            return static_cast<Symbol>(i);
    return std::nullopt;
}

Symbol StorageExpr::symbol(std::string_view name) const {
    if (auto s = find_symbol(name))
        return *s;
    throw UnknownSymbol(std::string(name));
}

void StorageExpr::compute_tests() {
    tests_.clear();
    for (std::size_t i = 0; i < alphabet_.size(); ++i)
        tests_.push_back(TestId::top(static_cast<Symbol>(i)));
    if (kind_ == StorageKind::ZCounter)
        tests_.push_back(TestId::empty());
    if (inner_)
        for (const TestId& t : inner_->tests())
            tests_.push_back(t.wrapped());
    if (tests_.size() > 64)
        throw IllTyped("storage type has more than 64 tests");
}

std::size_t StorageExpr::test_index(const TestId& t) const {
    auto it = std::find(tests_.begin(), tests_.end(), t);
    if (it == tests_.end())
        throw IllTyped("test not available on storage " + to_string(*this));
    return static_cast<std::size_t>(it - tests_.begin());
}

bool StorageExpr::operator==(const StorageExpr& other) const {
    if (kind_ != other.kind_ || alphabet_ != other.alphabet_)
        return false;
    if (!inner_ || !other.inner_)
        return !inner_ && !other.inner_;
    return *inner_ == *other.inner_;
}

StorageExpr parse_storage(std::string_view text) {
    // Pinv and P share a prefix, so dispatch on the keyword explicitly.
    std::function<StorageExpr(text::Cursor&)> rec = [&](text::Cursor& cur) -> StorageExpr {
        bool inv = false;
        if (cur.accept("Pinv"))
            inv = true;
        else if (!cur.accept('P')) {
            if (cur.accept('C'))
                return StorageExpr::counter();
            if (cur.accept('Z'))
                return StorageExpr::zcounter();
            cur.fail("expected storage expression (C, Z, P{...}(E) or Pinv{...}(E))");
        }
        cur.expect('{');
        std::vector<std::string> alphabet;
        if (!cur.accept('}')) {
            do {
                alphabet.push_back(cur.ident());
            } while (cur.accept(','));
            cur.expect('}');
        }
        cur.expect('(');
        StorageExpr inner = rec(cur);
        cur.expect(')');
        try {
            return inv ? StorageExpr::pushdown_inv(std::move(alphabet), inner)
                       : StorageExpr::pushdown(std::move(alphabet), inner);
        } catch (const IllTyped& err) {
            cur.fail(err.what());
        }
    };
    text::Cursor cur(text);
    StorageExpr e = rec(cur);
    if (!cur.at_end())
        cur.fail("trailing input after storage expression");
    return e;
}

std::string to_string(const StorageExpr& e) {
    switch (e.kind()) {
    case StorageKind::Counter:
        return "C";
    case StorageKind::ZCounter:
        return "Z";
    case StorageKind::Pushdown:
    case StorageKind::PushdownInv: {
        std::string out = e.kind() == StorageKind::Pushdown ? "P{" : "Pinv{";
        for (std::size_t i = 0; i < e.alphabet().size(); ++i) {
            if (i)
                out += ',';
            out += e.alphabet()[i];
        }
        out += "}(" + to_string(e.inner()) + ")";
        return out;
    }
    }
    return {};
}

// ---------------------------------------------------------------------------
// StorageConfig

StorageConfig StorageConfig::counter(std::uint64_t n) {
    StorageConfig c;
    c.count = n;
    return c;
}

StorageConfig StorageConfig::of_stack(std::vector<StackEntry> entries) {
    StorageConfig c;
    c.stack = std::move(entries);
    return c;
}

std::size_t StorageConfigHash::operator()(const StorageConfig& c) const noexcept {
    std::size_t h = std::hash<std::uint64_t>{}(c.count) ^ (c.stack.size() * 0x9e3779b97f4a7c15ULL);
    for (const StackEntry& e : c.stack) {
        h ^= e.symbol + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= (*this)(e.inner) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

StorageConfig initial_config(const StorageExpr& e) {
    if (e.is_counter())
        return StorageConfig::counter(0);
    return StorageConfig::of_stack({StackEntry{kBottom, initial_config(e.inner())}});
}

bool well_typed(const StorageExpr& e, const StorageConfig& c) {
    if (e.is_counter())
        return c.stack.empty();
    if (c.stack.empty() || c.count != 0)
        return false;
    for (const StackEntry& entry : c.stack)
        if (entry.symbol >= e.alphabet().size() || !well_typed(e.inner(), entry.inner))
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// OpId

OpId OpId::push_sym(Symbol s) {
    OpId op;
    op.kind_ = OpKind::PushSym;
    op.symbol_ = s;
    return op;
}
OpId OpId::pop() {
    OpId op;
    op.kind_ = OpKind::Pop;
    return op;
}
OpId OpId::id() { return OpId{}; }
OpId OpId::push(Symbol s) { return push(s, id()); }
OpId OpId::push(Symbol s, const OpId& f) {
    OpId op;
    op.kind_ = OpKind::Push;
    op.symbol_ = s;
    op.inner_ = std::make_shared<const OpId>(f);
    return op;
}
OpId OpId::inv_push(Symbol s) {
    OpId op;
    op.kind_ = OpKind::InvPush;
    op.symbol_ = s;
    return op;
}
OpId OpId::stay(const OpId& f) {
    OpId op;
    op.kind_ = OpKind::Stay;
    op.inner_ = std::make_shared<const OpId>(f);
    return op;
}

const OpId& OpId::inner() const {
    if (!inner_)
        throw IllTyped("operation has no inner operation");
    return *inner_;
}

bool OpId::is_plain_push() const noexcept {
    return kind_ == OpKind::Push && inner_ && inner_->kind() == OpKind::Id;
}

bool OpId::operator==(const OpId& other) const {
    if (kind_ != other.kind_ || symbol_ != other.symbol_)
        return false;
    if (!inner_ || !other.inner_)
        return !inner_ && !other.inner_;
    return *inner_ == *other.inner_;
}

bool well_typed(const StorageExpr& e, const OpId& op) {
    switch (op.kind()) {
    case OpKind::Id:
        return true;
    case OpKind::PushSym:
        return e.is_counter() && op.symbol() == kBottom;
    case OpKind::Pop:
        return e.kind() != StorageKind::PushdownInv;
    case OpKind::Push:
        return !e.is_counter() && op.symbol() < e.alphabet().size() && well_typed(e.inner(), op.inner());
    case OpKind::Stay:
        return !e.is_counter() && well_typed(e.inner(), op.inner());
    case OpKind::InvPush:
        return e.kind() == StorageKind::PushdownInv && op.symbol() < e.alphabet().size();
    }
    return false;
}

bool well_typed(const StorageExpr& e, const TestId& t) {
    return std::find(e.tests().begin(), e.tests().end(), t) != e.tests().end();
}

std::optional<StorageConfig> apply_op(const StorageExpr& e, const OpId& op, const StorageConfig& c) {
    if (op.kind() == OpKind::Id)
        return c;
    if (e.is_counter()) {
        switch (op.kind()) {
        case OpKind::PushSym:
            return StorageConfig::counter(c.count + 1);
        case OpKind::Pop:
            if (c.count == 0)
                return std::nullopt;
            return StorageConfig::counter(c.count - 1);
        default:
            throw IllTyped("operation not defined on counters");
        }
    }
    const StorageExpr& inner = e.inner();
    switch (op.kind()) {
    case OpKind::Push: {
        auto f = apply_op(inner, op.inner(), c.stack.back().inner);
        if (!f)
            return std::nullopt;
        StorageConfig out = c;
        out.stack.push_back(StackEntry{op.symbol(), std::move(*f)});
        return out;
    }
    case OpKind::Stay: {
        auto f = apply_op(inner, op.inner(), c.stack.back().inner);
        if (!f)
            return std::nullopt;
        StorageConfig out = c;
        out.stack.back().inner = std::move(*f);
        return out;
    }
    case OpKind::Pop: {
        if (c.stack.size() < 2)
            return std::nullopt;
        StorageConfig out = c;
        out.stack.pop_back();
        return out;
    }
    case OpKind::InvPush: {
        const std::size_t n = c.stack.size();
        if (n < 2 || c.stack[n - 1].symbol != op.symbol() || !(c.stack[n - 1].inner == c.stack[n - 2].inner))
            return std::nullopt;
        StorageConfig out = c;
        out.stack.pop_back();
        return out;
    }
    default:
        throw IllTyped("operation not defined on pushdowns");
    }
}

bool eval_test(const StorageExpr& e, const TestId& t, const StorageConfig& c) {
    if (t.depth > 0) {
        if (e.is_counter())
            throw IllTyped("inner test on a counter");
        return eval_test(e.inner(), TestId{t.depth - 1, t.kind, t.symbol}, c.stack.back().inner);
    }
    if (t.kind == TestKind::Empty) {
        if (e.kind() != StorageKind::ZCounter)
            throw IllTyped("zero-test on a storage without zero-test");
        return c.count == 0;
    }
    if (e.is_counter())
        return t.symbol == kBottom;
    return c.stack.back().symbol == t.symbol;
}

TestMask test_mask(const StorageExpr& e, const StorageConfig& c) {
    TestMask mask = 0;
    unsigned offset = 0;
    const StorageExpr* level = &e;
    const StorageConfig* cfg = &c;
    while (true) {
        const auto n = static_cast<unsigned>(level->alphabet().size());
        if (level->is_counter()) {
            mask |= TestMask{1} << offset; // Top(_) holds on every counter
            if (level->kind() == StorageKind::ZCounter && cfg->count == 0)
                mask |= TestMask{1} << (offset + 1);
            return mask;
        }
        mask |= TestMask{1} << (offset + cfg->stack.back().symbol);
        offset += n;
        cfg = &cfg->stack.back().inner;
        level = &level->inner();
    }
}

// ---------------------------------------------------------------------------
// Text forms

static OpId parse_op_rec(const StorageExpr& e, text::Cursor& cur) {
    std::string word = cur.ident();
    auto symbol_arg = [&](const StorageExpr& level) {
        std::string name = cur.ident();
        return level.symbol(name);
    };
    OpId op;
    if (word == "pop") {
        op = OpId::pop();
    } else if (word == "id") {
        op = OpId::id();
    } else if (word == "pushsym") {
        cur.expect('(');
        op = OpId::push_sym(symbol_arg(e));
        cur.expect(')');
    } else if (word == "push") {
        cur.expect('(');
        if (e.is_counter())
            cur.fail("push(σ) needs a pushdown storage; use pushsym(_) on counters");
        Symbol s = symbol_arg(e);
        OpId f = OpId::id();
        if (cur.accept(','))
            f = parse_op_rec(e.inner(), cur);
        cur.expect(')');
        op = OpId::push(s, f);
    } else if (word == "invpush") {
        cur.expect('(');
        if (e.is_counter())
            cur.fail("invpush(σ) needs a pushdown storage");
        op = OpId::inv_push(symbol_arg(e));
        cur.expect(')');
    } else if (word == "stay") {
        cur.expect('(');
        if (e.is_counter())
            cur.fail("stay(f) needs a pushdown storage");
        op = OpId::stay(parse_op_rec(e.inner(), cur));
        cur.expect(')');
    } else {
        cur.fail("unknown operation '" + word + "'");
    }
    if (!well_typed(e, op))
        throw IllTyped("operation '" + word + "' is not available on storage " + to_string(e));
    return op;
}

OpId parse_op(const StorageExpr& e, std::string_view s) {
    text::Cursor cur(s);
    OpId op = parse_op_rec(e, cur);
    if (!cur.at_end())
        cur.fail("trailing input after operation");
    return op;
}

std::string to_string(const StorageExpr& e, const OpId& op) {
    switch (op.kind()) {
    case OpKind::Id:
        return "id";
    case OpKind::Pop:
        return "pop";
    case OpKind::PushSym:
        return "pushsym(" + e.symbol_name(op.symbol()) + ")";
    case OpKind::InvPush:
        return "invpush(" + e.symbol_name(op.symbol()) + ")";
    case OpKind::Push:
        if (op.is_plain_push())
            return "push(" + e.symbol_name(op.symbol()) + ")";
        return "push(" + e.symbol_name(op.symbol()) + "," + to_string(e.inner(), op.inner()) + ")";
    case OpKind::Stay:
        return "stay(" + to_string(e.inner(), op.inner()) + ")";
    }
    return {};
}

static TestLiteral parse_test_rec(const StorageExpr& e, text::Cursor& cur) {
    std::string word = cur.ident();
    if (word == "inner") {
        if (e.is_counter())
            cur.fail("inner(...) test on a counter");
        cur.expect('(');
        TestLiteral lit = parse_test_rec(e.inner(), cur);
        cur.expect(')');
        lit.test = lit.test.wrapped();
        return lit;
    }
    if (word == "top") {
        bool value = true;
        if (cur.accept("!="))
            value = false;
        else
            cur.expect('=');
        Symbol s = e.symbol(cur.ident());
        return {TestId::top(s), value};
    }
    if (word == "empty") {
        if (e.kind() != StorageKind::ZCounter)
            throw IllTyped("empty test needs a zero-test counter (Z)");
        cur.expect('=');
        std::string v = cur.ident();
        if (v != "true" && v != "false")
            cur.fail("expected true or false");
        return {TestId::empty(), v == "true"};
    }
    cur.fail("unknown test '" + word + "'");
}

TestLiteral parse_test_literal(const StorageExpr& e, std::string_view s) {
    text::Cursor cur(s);
    TestLiteral lit = parse_test_rec(e, cur);
    if (!cur.at_end())
        cur.fail("trailing input after test");
    return lit;
}

std::string to_string(const StorageExpr& e, const TestLiteral& lit) {
    if (lit.test.depth > 0) {
        TestLiteral in{TestId{lit.test.depth - 1, lit.test.kind, lit.test.symbol}, lit.value};
        return "inner(" + to_string(e.inner(), in) + ")";
    }
    if (lit.test.kind == TestKind::Empty)
        return std::string("empty=") + (lit.value ? "true" : "false");
    return std::string(lit.value ? "top=" : "top!=") + e.symbol_name(lit.test.symbol);
}

static StorageConfig parse_config_rec(const StorageExpr& e, text::Cursor& cur) {
    if (e.is_counter())
        return StorageConfig::counter(cur.number());
    std::vector<StackEntry> entries;
    while (cur.peek() == '(') {
        cur.expect('(');
        Symbol s = e.symbol(cur.ident());
        cur.expect(',');
        StorageConfig inner = parse_config_rec(e.inner(), cur);
        cur.expect(')');
        entries.push_back(StackEntry{s, std::move(inner)});
    }
    if (entries.empty())
        cur.fail("stack configurations must be nonempty");
    return StorageConfig::of_stack(std::move(entries));
}

StorageConfig parse_config(const StorageExpr& e, std::string_view s) {
    text::Cursor cur(s);
    StorageConfig c = parse_config_rec(e, cur);
    if (!cur.at_end())
        cur.fail("trailing input after configuration");
    return c;
}

std::string to_string(const StorageExpr& e, const StorageConfig& c) {
    if (e.is_counter())
        return std::to_string(c.count);
    std::string out;
    for (const StackEntry& entry : c.stack)
        out += "(" + e.symbol_name(entry.symbol) + "," + to_string(e.inner(), entry.inner) + ")";
    return out;
}

} // namespace hoca
