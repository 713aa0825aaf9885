#ifndef REDACT_POLICY_HPP_
#define REDACT_POLICY_HPP_

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "redact/field.hpp"

namespace redact {

class PolicyError : public std::runtime_error {
  public:
    explicit PolicyError(const std::string& what) : std::runtime_error(what) {}
};

// Monotone boolean formula over attribute labels.
// Grammar: expr := term | expr "OR" term
//          term := atom | term "AND" atom
//          atom := label | "(" expr ")"
class AccessPolicy {
  public:
    struct Node {
        enum Kind { kLeaf, kAnd, kOr };
        Kind kind = kLeaf;
        std::string label;
        std::unique_ptr<Node> left, right;
    };

    static AccessPolicy parse(std::string_view text);
    static AccessPolicy leaf(std::string label);
    static AccessPolicy and_of(AccessPolicy a, AccessPolicy b);
    static AccessPolicy or_of(AccessPolicy a, AccessPolicy b);

    bool satisfied_by(const std::set<std::string>& attrs) const;
    std::vector<std::string> leaves() const;  // in-order, duplicates kept
    std::string to_string() const;
    const Node& root() const { return *root_; }

    AccessPolicy(AccessPolicy&&) = default;
    AccessPolicy& operator=(AccessPolicy&&) = default;
    AccessPolicy clone() const;

  private:
    AccessPolicy() = default;
    std::unique_ptr<Node> root_;
};

// Attribute set: deduplicated labels in canonical byte order, each carried
// with its Z_q encoding A = H(label).
class AttributeSet {
  public:
    static AttributeSet of(std::vector<std::string> labels, const Field& f);

    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<Scalar>& encodings() const { return encodings_; }
    size_t size() const { return labels_.size(); }
    bool contains(const std::string& label) const;
    std::set<std::string> label_set() const {
        return std::set<std::string>(labels_.begin(), labels_.end());
    }

  private:
    std::vector<std::string> labels_;
    std::vector<Scalar> encodings_;
};

}  // namespace redact

#endif
