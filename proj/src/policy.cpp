#include "redact/policy.hpp"

#include <algorithm>

namespace redact {

namespace {

struct Token {
    enum Kind { kLabel, kAnd, kOr, kOpen, kClose, kEnd };
    Kind kind;
    std::string text;
};

class Lexer {
  public:
    explicit Lexer(std::string_view s) : s_(s) {}

    Token next() {
        while (pos_ < s_.size() && std::isspace(uint8_t(s_[pos_]))) pos_++;
        if (pos_ >= s_.size()) return {Token::kEnd, ""};
        char c = s_[pos_];
        if (c == '(') { pos_++; return {Token::kOpen, "("}; }
        if (c == ')') { pos_++; return {Token::kClose, ")"}; }
        size_t start = pos_;
        while (pos_ < s_.size() && !std::isspace(uint8_t(s_[pos_])) &&
               s_[pos_] != '(' && s_[pos_] != ')') {
            pos_++;
        }
        std::string word(s_.substr(start, pos_ - start));
        if (word == "AND") return {Token::kAnd, word};
        if (word == "OR") return {Token::kOr, word};
        return {Token::kLabel, word};
    }

  private:
    std::string_view s_;
    size_t pos_ = 0;
};

using Node = AccessPolicy::Node;

std::unique_ptr<Node> make_leaf(std::string label) {
    auto n = std::make_unique<Node>();
    n->kind = Node::kLeaf;
    n->label = std::move(label);
    return n;
}

std::unique_ptr<Node> make_gate(Node::Kind kind, std::unique_ptr<Node> l,
                                std::unique_ptr<Node> r) {
    auto n = std::make_unique<Node>();
    n->kind = kind;
    n->left = std::move(l);
    n->right = std::move(r);
    return n;
}

class Parser {
  public:
    explicit Parser(std::string_view s) : lex_(s) { advance(); }

    std::unique_ptr<Node> parse() {
        auto n = expr();
        if (cur_.kind != Token::kEnd) throw PolicyError("unexpected token: " + cur_.text);
        return n;
    }

  private:
    void advance() { cur_ = lex_.next(); }

    std::unique_ptr<Node> expr() {
        auto n = term();
        while (cur_.kind == Token::kOr) {
            advance();
            n = make_gate(Node::kOr, std::move(n), term());
        }
        return n;
    }

    std::unique_ptr<Node> term() {
        auto n = atom();
        while (cur_.kind == Token::kAnd) {
            advance();
            n = make_gate(Node::kAnd, std::move(n), atom());
        }
        return n;
    }

    std::unique_ptr<Node> atom() {
        if (cur_.kind == Token::kOpen) {
            advance();
            auto n = expr();
            if (cur_.kind != Token::kClose) throw PolicyError("missing ')'");
            advance();
            return n;
        }
        if (cur_.kind == Token::kLabel) {
            auto n = make_leaf(cur_.text);
            advance();
            return n;
        }
        throw PolicyError("expected attribute or '('");
    }

    Lexer lex_;
    Token cur_;
};

bool eval(const Node& n, const std::set<std::string>& attrs) {
    switch (n.kind) {
        case Node::kLeaf: return attrs.count(n.label) > 0;
        case Node::kAnd: return eval(*n.left, attrs) && eval(*n.right, attrs);
        case Node::kOr: return eval(*n.left, attrs) || eval(*n.right, attrs);
    }
    return false;
}

void collect_leaves(const Node& n, std::vector<std::string>& out) {
    if (n.kind == Node::kLeaf) {
        out.push_back(n.label);
        return;
    }
    collect_leaves(*n.left, out);
    collect_leaves(*n.right, out);
}

void print(const Node& n, std::string& out) {
    if (n.kind == Node::kLeaf) {
        out += n.label;
        return;
    }
    out += '(';
    print(*n.left, out);
    out += n.kind == Node::kAnd ? " AND " : " OR ";
    print(*n.right, out);
    out += ')';
}

std::unique_ptr<Node> clone_node(const Node& n) {
    auto c = std::make_unique<Node>();
    c->kind = n.kind;
    c->label = n.label;
    if (n.left) c->left = clone_node(*n.left);
    if (n.right) c->right = clone_node(*n.right);
    return c;
}

}  // namespace

AccessPolicy AccessPolicy::parse(std::string_view text) {
    AccessPolicy p;
    p.root_ = Parser(text).parse();
    return p;
}

AccessPolicy AccessPolicy::leaf(std::string label) {
    AccessPolicy p;
    p.root_ = make_leaf(std::move(label));
    return p;
}

AccessPolicy AccessPolicy::and_of(AccessPolicy a, AccessPolicy b) {
    AccessPolicy p;
    p.root_ = make_gate(Node::kAnd, std::move(a.root_), std::move(b.root_));
    return p;
}

AccessPolicy AccessPolicy::or_of(AccessPolicy a, AccessPolicy b) {
    AccessPolicy p;
    p.root_ = make_gate(Node::kOr, std::move(a.root_), std::move(b.root_));
    return p;
}

bool AccessPolicy::satisfied_by(const std::set<std::string>& attrs) const {
    return eval(*root_, attrs);
}

std::vector<std::string> AccessPolicy::leaves() const {
    std::vector<std::string> out;
    collect_leaves(*root_, out);
    return out;
}

std::string AccessPolicy::to_string() const {
    std::string out;
    print(*root_, out);
    return out;
}

AccessPolicy AccessPolicy::clone() const {
    AccessPolicy p;
    p.root_ = clone_node(*root_);
    return p;
}

AttributeSet AttributeSet::of(std::vector<std::string> labels, const Field& f) {
    if (labels.empty()) throw std::invalid_argument("attribute set must be nonempty");
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    AttributeSet s;
    s.labels_ = std::move(labels);
    s.encodings_.reserve(s.labels_.size());
    for (const auto& l : s.labels_) s.encodings_.push_back(hash_to_scalar(f, l));
    return s;
}

bool AttributeSet::contains(const std::string& label) const {
    return std::binary_search(labels_.begin(), labels_.end(), label);
}

}  // namespace redact
