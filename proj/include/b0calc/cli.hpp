#pragma once

#include <b0calc/families.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace b0calc {

// A group named on the command line: either a family expression such as
//   G1(p=3,r=1)  heisenberg(p=3)  extraspecial(p=3,n=2,kind=p)
//   mc(p=3,r=1,b=2,a=1)  c2(p=3,r=1,b=2,a1=1,a2=1)
//   cp(file1,K1,file2,K2,map)
// or a path to a presentation file.  Expressions built as central
// products also carry the factor data for the sequence commands.
struct GroupSource {
  std::string label;
  PcPresentation pres;
  std::optional<CentralProductSpec> product;
};

GroupSource resolve_group(const std::string& expr);

// Expands {v1,v2,...} alternation lists into the cartesian product of
// concrete expressions; an empty list {} yields no expressions.
std::vector<std::string> expand_grid(const std::string& expr);

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace b0calc
