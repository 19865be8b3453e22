#ifndef TDU_DSL_HPP
#define TDU_DSL_HPP

// Textual theory language.
//
//   fact CO(acme).
//   r1c: CO(X) =>p SpatialScope(X, zone).
//   e1: [P]SpatialScope(X, zone) -> [P]SpatialScope(X, street).
//   d1: p ~> ~q.
//   r1 > r2.
//   modal_conversion off.
//
// Arrows: -> strict, => defeasible, ~> defeater; suffix o/p sets the head
// mode (obligation/permission). `~` negates, [O]/[P] prefix literals.
// Arguments starting with an uppercase letter are variables; quoting an
// argument ('CommercialUse') makes it a constant regardless of case. `#`
// and `%` start comments.

#include <string>

#include "tdu/dl.hpp"

namespace tdu::dsl {

struct ParseError : dl::Error {
    ParseError(const std::string& msg, int line, int column)
        : dl::Error(msg + " at line " + std::to_string(line) + ", column " +
                    std::to_string(column)),
          line(line),
          column(column) {}
    int line;
    int column;
};

dl::Theory parse_theory(const std::string& text);

// Convenience for a single-statement rule; rejects anything else.
dl::Rule parse_rule(const std::string& text);

}  // namespace tdu::dsl

#endif
