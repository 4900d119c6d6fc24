#include "cayley/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "cayley/classify.hpp"
#include "cayley/engine.hpp"
#include "cayley/enumerate.hpp"
#include "cayley/errors.hpp"
#include "json.hpp"

namespace cayley {

namespace {

struct Settings {
  std::vector<std::string> tokens;
  std::string mode = "vertical";
  std::size_t terms = 10;
  std::size_t max_size = kDefaultMaxSize;
  std::size_t max_states = kDefaultMaxStates;
  std::string format = "text";
  std::string artifact = "rules";
  std::string out_file;
};

std::string join(const std::vector<std::string>& v, std::string_view sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i];
  }
  return out;
}

std::string join_big(const std::vector<BigInt>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].str();
  return out;
}

std::vector<Mode> modes_of(const std::string& m) {
  if (m == "both") return {Mode::vertical, Mode::horizontal};
  return {parse_mode(m)};
}

Basis basis_of(const Settings& s) {
  if (s.tokens.empty()) throw std::invalid_argument("a basis is required, e.g. \"231 312 2121\"");
  return Basis::parse(join(s.tokens));
}

ExploreOptions explore_options(const Settings& s) {
  ExploreOptions o;
  o.max_states = s.max_states;
  return o;
}

nlohmann::ordered_json big_json(const std::vector<BigInt>& v) {
  auto j = nlohmann::ordered_json::array();
  for (const auto& x : v) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
      j.push_back(static_cast<std::int64_t>(x));
    else
      j.push_back(x.str());
  }
  return j;
}

void do_classify(const Settings& s, std::ostream& out) {
  const auto b = basis_of(s);
  const auto modes = modes_of(s.mode);
  nlohmann::ordered_json j;
  j["basis"] = b.to_string();
  for (Mode m : modes) {
    std::optional<std::string> missing;
    if (m == Mode::vertical) {
      if (auto c = missing_vertical_class(b)) missing = to_string(*c);
    } else if (auto c = missing_horizontal_class(b)) {
      missing = to_string(*c);
    }
    if (s.format == "json") {
      j[std::string(to_string(m))] = {{"regular", !missing},
                                      {"missing_class", missing ? nlohmann::ordered_json(*missing)
                                                                : nlohmann::ordered_json(nullptr)}};
      continue;
    }
    if (modes.size() > 1) out << to_string(m) << " ";
    out << "regular: " << (missing ? "no" : "yes");
    if (missing) out << " (the class contains all of " << *missing << ")";
    out << "\n";
  }
  if (s.format == "json") out << j.dump() << "\n";
}

// Tries each requested mode in order; returns the first that is regular.
Enumeration enumerate_any(const Settings& s, const Basis& b, Mode& used, std::ostream& out) {
  const auto modes = modes_of(s.mode);
  for (std::size_t i = 0; i < modes.size(); ++i) {
    try {
      used = modes[i];
      return enumerate_class(b, modes[i], s.terms, explore_options(s));
    } catch (const NotSlotBounded& e) {
      if (i + 1 == modes.size()) throw;
      if (s.format == "text") out << "# " << e.what() << "; trying " << to_string(modes[i + 1]) << "\n";
    }
  }
  throw std::logic_error("no mode requested");
}

void do_gf(const Settings& s, std::ostream& out) {
  const auto b = basis_of(s);
  Mode used = Mode::vertical;
  const auto e = enumerate_any(s, b, used, out);
  if (s.format == "json") {
    nlohmann::ordered_json j;
    j["basis"] = b.to_string();
    j["mode"] = std::string(to_string(used));
    j["gf"] = nlohmann::ordered_json::parse(e.gf.to_json());
    j["terms"] = big_json(e.terms);
    j["states"] = e.rules.symbols.size();
    out << j.dump() << "\n";
    return;
  }
  out << "mode: " << to_string(used) << "\n";
  out << "states: " << e.rules.symbols.size() << "\n";
  out << "gf: " << e.gf.to_string() << "\n";
  out << "terms: " << join_big(e.terms) << "\n";
}

void do_count(const Settings& s, std::ostream& out) {
  const auto b = basis_of(s);
  std::vector<BigInt> counts;
  for (std::size_t n = 1; n <= s.terms; ++n) counts.emplace_back(count_avoiders(b, n, s.max_size));
  if (s.format == "json") {
    out << nlohmann::ordered_json{{"basis", b.to_string()}, {"terms", big_json(counts)}}.dump() << "\n";
    return;
  }
  out << "terms: " << join_big(counts) << "\n";
}

void do_encode(const Settings& s, std::ostream& out) {
  if (s.tokens.size() != 1) throw std::invalid_argument("encode takes one Cayley permutation");
  const auto p = CayleyPerm::parse(s.tokens[0]);
  const auto modes = modes_of(s.mode);
  for (Mode m : modes) {
    if (modes.size() > 1) out << to_string(m) << ": ";
    out << (m == Mode::vertical ? to_string(vertical_encode(p)) : to_string(horizontal_encode(p)))
        << "\n";
  }
}

void do_decode(const Settings& s, std::ostream& out) {
  if (s.mode == "both") throw std::invalid_argument("decode needs --mode vertical or horizontal");
  const auto text = join(s.tokens);
  const auto p = parse_mode(s.mode) == Mode::vertical ? vertical_decode(parse_vertical_word(text))
                                                      : horizontal_decode(parse_horizontal_word(text));
  out << p.to_string() << "\n";
}

void do_survey(const Settings& s, std::ostream& out) {
  const auto survey = survey_size3();
  out << (s.format == "json" ? survey.to_json() + "\n" : survey.to_text());
}

bool do_verify(const Settings& s, std::ostream& out) {
  const auto b = basis_of(s);
  Mode used = Mode::vertical;
  const auto e = enumerate_any(s, b, used, out);
  bool all = true;
  out << "mode: " << to_string(used) << "\n";
  for (std::size_t n = 1; n <= s.terms; ++n) {
    const BigInt brute = count_avoiders(b, n, s.max_size);
    const bool ok = brute == e.terms[n - 1];
    all = all && ok;
    out << "n=" << n << " series=" << e.terms[n - 1] << " brute=" << brute << (ok ? " ok" : " MISMATCH")
        << "\n";
  }
  out << (all ? "agree" : "disagree") << "\n";
  return all;
}

void do_export(const Settings& s, std::ostream& out) {
  const auto b = basis_of(s);
  Mode used = Mode::vertical;
  RuleSystem r;
  const auto modes = modes_of(s.mode);
  for (std::size_t i = 0; i < modes.size(); ++i) {
    try {
      used = modes[i];
      r = explore(b, used, explore_options(s));
      break;
    } catch (const NotSlotBounded&) {
      if (i + 1 == modes.size()) throw;
    }
  }
  if (s.artifact == "tilings") {
    if (s.format == "json") {
      nlohmann::ordered_json j = nlohmann::ordered_json::object();
      for (const auto& sym : r.symbols)
        if (r.tilings.count(sym)) j[sym] = nlohmann::ordered_json::parse(r.tilings.at(sym).to_json());
      out << j.dump() << "\n";
    } else {
      for (const auto& sym : r.symbols)
        if (r.tilings.count(sym)) out << "# " << sym << "\n" << r.tilings.at(sym).to_string();
    }
    return;
  }
  if (s.format == "dot" || s.artifact == "automaton") {
    out << (s.format == "json" ? export_automaton_json(r) + "\n" : export_automaton_dot(r));
    return;
  }
  out << (s.format == "json" ? r.to_json() + "\n" : r.to_text());
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cayley permutation classes: regularity, generating functions and encodings", "cperm"};
  app.require_subcommand(1);
  app.footer(
      "Bases are space-separated pattern tokens, e.g. cperm gf 231 312 2121.\n"
      "Exit status: 0 ok, 1 invalid input, 2 not regular in the requested mode,\n"
      "3 size or state cap reached, 4 verify found a disagreement.");
  Settings s;
  app.add_option("--mode", s.mode, "vertical, horizontal, or both (vertical first)")
      ->check(CLI::IsMember({"vertical", "horizontal", "both"}))
      ->capture_default_str();
  app.add_option("--terms", s.terms, "number of terms to print or verify")->capture_default_str();
  app.add_option("--max-size", s.max_size, "largest size enumerated by brute force")
      ->envname("CPERM_MAX_SIZE")
      ->capture_default_str();
  app.add_option("--max-states", s.max_states, "state cap for exploration")
      ->envname("CPERM_MAX_STATES")
      ->capture_default_str();
  app.add_option("--format", s.format, "text, json, or dot")
      ->check(CLI::IsMember({"text", "json", "dot"}))
      ->capture_default_str();
  app.add_option("--out", s.out_file, "write output to FILE");

  auto sub = [&](const char* name, const char* help, const char* what) {
    auto* c = app.add_subcommand(name, help);
    c->fallthrough();
    if (what) c->add_option("args", s.tokens, what)->required();
    return c;
  };
  auto* classify = sub("classify", "report regularity per mode", "basis patterns");
  auto* gf = sub("gf", "generating function and first terms", "basis patterns");
  auto* count = sub("count", "brute-force counting sequence", "basis patterns");
  auto* encode = sub("encode", "insertion encoding of a Cayley permutation", "Cayley permutation");
  auto* decode = sub("decode", "Cayley permutation of an insertion encoding", "letters, e.g. m1,1 f1,0");
  auto* survey = sub("survey", "regularity of every set of size-3 patterns", nullptr);
  auto* verify = sub("verify", "compare the generating function with brute force", "basis patterns");
  auto* exp = sub("export", "grammar, automaton or tilings", "basis patterns");
  exp->add_option("--artifact", s.artifact, "rules, automaton, or tilings")
      ->check(CLI::IsMember({"rules", "automaton", "tilings"}))
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  std::ostringstream buffer;
  std::ostream& dest = s.out_file.empty() ? out : buffer;
  int status = kExitOk;
  try {
    if (s.format == "dot" && !exp->parsed()) throw std::invalid_argument("--format dot is only for export");
    if (*classify) do_classify(s, dest);
    else if (*gf) do_gf(s, dest);
    else if (*count) do_count(s, dest);
    else if (*encode) do_encode(s, dest);
    else if (*decode) do_decode(s, dest);
    else if (*survey) do_survey(s, dest);
    else if (*verify) status = do_verify(s, dest) ? kExitOk : kExitMismatch;
    else if (*exp) do_export(s, dest);
  } catch (const NotSlotBounded& e) {
    err << "error: " << e.what() << "\n";
    return kExitNotSlotBounded;
  } catch (const ResourceCapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitResourceCap;
  } catch (const InvalidWord& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  if (!s.out_file.empty()) {
    std::ofstream f(s.out_file);
    if (!f) {
      err << "error: cannot write " << s.out_file << "\n";
      return kExitInvalidInput;
    }
    f << buffer.str();
  }
  return status;
}

}  // namespace cayley
