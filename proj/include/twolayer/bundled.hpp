#pragma once

// Scenarios shipped with the library, addressable by name from the CLI.
// Kept byte-identical to the files under scenarios/ (checked by the tests).

#include <optional>
#include <string_view>

namespace twolayer {

inline constexpr std::string_view k_example_8_1 = R"scn(# Four inner sensors over outer groups {1,2,3} {4,5} {6,7} {8,9}, unit flows.
name: example_8_1
epsilon: 0.1
budget_x: 10
budget_y: 10.1
objective: expected

inner: 1
  adjacent: [1, 2, 3]
  domain_max: 20
  lines: [[0.2, 0], [0.1, 0.4]]

inner: 2
  adjacent: [4, 5]
  domain_max: 20
  lines: [[0.2, 0], [0.1, 0.4]]

inner: 3
  adjacent: [6, 7]
  domain_max: 20
  lines: [[0.2, 0], [0.1, 0.4]]

inner: 4
  adjacent: [8, 9]
  domain_max: 20
  lines: [[0.2, 0], [0.1, 0.4]]

outer: 1
  flow: 1
  domain_max: 20
  lines: [[0.3, 0], [0.1, 0.3], [0.05, 0.5]]

outer: 2
  flow: 1
  domain_max: 20
  lines: [[0.3, 0], [0.1, 0.3]]

outer: 3
  flow: 1
  domain_max: 20
  lines: [[0.3, 0], [0.1, 0.3]]

outer: 4
  flow: 1
  domain_max: 20
  lines: [[0.3, 0], [0.1, 0.3]]

outer: 5
  flow: 1
  domain_max: 20
  lines: [[0.3, 0], [0.1, 0.3]]

outer: 6
  flow: 1
  domain_max: 20
  lines: [[0.3, 0], [0.1, 0.3]]

outer: 7
  flow: 1
  domain_max: 20
  lines: [[0.3, 0], [0.1, 0.3]]

outer: 8
  flow: 1
  domain_max: 20
  lines: [[0.3, 0], [0.1, 0.3]]

outer: 9
  flow: 1
  domain_max: 20
  lines: [[0.3, 0], [0.1, 0.3]]
)scn";

inline constexpr std::string_view k_example_8_2 = R"scn(# example_8_1 topology with 10 units of flow on outer sensors 1 and 9.
name: example_8_2
epsilon: 0.1
budget_x: 10
budget_y: 10.1
objective: expected

inner: 1
  adjacent: [1, 2, 3]
  domain_max: 20
  lines: [[0.2, 0], [0.1, 0.4]]

inner: 2
  adjacent: [4, 5]
  domain_max: 20
  lines: [[0.2, 0], [0.1, 0.4]]

inner: 3
  adjacent: [6, 7]
  domain_max: 20
  lines: [[0.2, 0], [0.1, 0.4]]

inner: 4
  adjacent: [8, 9]
  domain_max: 20
  lines: [[0.2, 0], [0.1, 0.4]]

outer: 1
  flow: 10
  domain_max: 20
  lines: [[0.3, 0], [0.1, 0.3], [0.05, 0.5]]

outer: 2
  flow: 1
  domain_max: 20
  lines: [[0.3, 0], [0.1, 0.3]]

outer: 3
  flow: 1
  domain_max: 20
  lines: [[0.3, 0], [0.1, 0.3]]

outer: 4
  flow: 1
  domain_max: 20
  lines: [[0.3, 0], [0.1, 0.3]]

outer: 5
  flow: 1
  domain_max: 20
  lines: [[0.3, 0], [0.1, 0.3]]

outer: 6
  flow: 1
  domain_max: 20
  lines: [[0.3, 0], [0.1, 0.3]]

outer: 7
  flow: 1
  domain_max: 20
  lines: [[0.3, 0], [0.1, 0.3]]

outer: 8
  flow: 1
  domain_max: 20
  lines: [[0.3, 0], [0.1, 0.3]]

outer: 9
  flow: 10
  domain_max: 20
  lines: [[0.3, 0], [0.1, 0.3]]
)scn";

inline constexpr std::string_view k_two_branch_small = R"scn(# Two identical branches, identity curves on [0, 1].
name: two_branch_small
epsilon: 0.5
budget_x: 1
budget_y: 1
objective: expected

inner: a
  adjacent: [p]
  breakpoints: [[0, 0], [1, 1]]

inner: b
  adjacent: [q]
  breakpoints: [[0, 0], [1, 1]]

outer: p
  flow: 1
  breakpoints: [[0, 0], [1, 1]]

outer: q
  flow: 1
  breakpoints: [[0, 0], [1, 1]]
)scn";

inline std::optional<std::string_view> bundled_scenario(std::string_view name) {
  if (name == "example_8_1") return k_example_8_1;
  if (name == "example_8_2") return k_example_8_2;
  if (name == "two_branch_small") return k_two_branch_small;
  return std::nullopt;
}

}  // namespace twolayer
