#pragma once

#include "vpbridge/model.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace vpb {

// One line of the keyword format: a record type, positional words, then
// key=value pairs. Whitespace inside brackets and around '=' is ignored.
struct Record {
  int line = 0;
  std::string kind;
  std::vector<std::string> args;
  std::map<std::string, std::string> kv;

  bool has(const std::string &k) const { return kv.count(k) > 0; }
  const std::string &get(const std::string &k) const;
  std::string get_or(const std::string &k, const std::string &dflt) const;
  int get_int(const std::string &k) const;
  int get_int_or(const std::string &k, int dflt) const;
  [[noreturn]] void fail(const std::string &msg) const;
};

std::vector<Record> read_records(std::istream &in);
Record parse_record(const std::string &text, int line);

int parse_int(const std::string &s, const Record &ctx);
// "[a,b,c]" -> {"a","b","c"}; splits only at depth zero
std::vector<std::string> parse_list(const std::string &s, const Record &ctx);
// "(a,b)" -> {"a","b"}
std::vector<std::string> parse_tuple(const std::string &s, const Record &ctx);
// "{a:1,b:2}" -> map
std::map<std::string, std::string> parse_map(const std::string &s, const Record &ctx);
std::vector<std::string> split_top(const std::string &s, char sep);

Diagram parse_diagram(std::istream &in);
Diagram parse_diagram_string(const std::string &text);
Diagram load_diagram(const std::string &path);

std::string print_diagram(const Diagram &d);
std::string print_meta(const Meta &m);
std::string print_surface(const Surface &s);
std::string print_body(const Body &b);
void save_diagram(const Diagram &d, const std::string &path);

} // namespace vpb
