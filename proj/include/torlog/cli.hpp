#pragma once

#include "torlog/embed.hpp"
#include "torlog/tflat.hpp"

namespace torlog::cli {

struct NamedIdeal {
  std::string name;
  MonoidIdeal ideal;
};

struct NamedModule {
  std::string name;
  CombinatorialModule module;
  std::string rel_name;  // empty when no annihilating ideal was named
};

struct NamedFlag {
  std::string name;
  Flag flag;
  bool declared_complete = false;
};

struct MonoidEntry {
  std::string name;
  MonoidPresentation monoid;
  std::vector<NamedIdeal> ideals;
  std::vector<NamedModule> modules;
  std::vector<NamedFlag> flags;
};

struct ParsedFile {
  std::vector<MonoidEntry> monoids;

  const MonoidEntry& entry(const std::string& name) const;  // empty name: first
};

ParsedFile parse_monoid_text(const std::string& text);
ParsedFile parse_monoid_file(const std::string& path);
std::string serialize(const ParsedFile& f);

enum class Command { info, saturate, faces, embed, filtration, tflat, report };
enum class OutputFormat { text, json };

struct SessionSpec {
  std::string input_path;
  Command command = Command::info;
  Int bound{10};
  OutputFormat format = OutputFormat::text;
  int jobs = 1;
  bool expect_tflat = false;
  long seed = 0;  // reserved for randomized property commands
  std::string monoid_name;  // empty: first monoid in the file
  std::string module_name;  // empty: first module
  std::string flag_name;    // empty: computed complete flag
};

struct RunResult {
  int exit_code = 0;
  std::string output;
  std::string error;
};

RunResult run(const SessionSpec& spec);
RunResult run_on(const ParsedFile& file, const SessionSpec& spec);

}  // namespace torlog::cli
