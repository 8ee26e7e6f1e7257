#include "k3lat/cli.hpp"

#include "k3lat/clifford.hpp"
#include "k3lat/enumerate.hpp"
#include "k3lat/errors.hpp"
#include "k3lat/gauss.hpp"
#include "k3lat/json_io.hpp"
#include "k3lat/kuga_satake.hpp"
#include "k3lat/theta.hpp"
#include "k3lat/transfer.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

namespace k3lat {

namespace {

constexpr double kFloatTol = 1e-9;

const std::vector<std::string> kCommands = {"info", "count", "theta", "gauss", "milgram",
                                            "clifford", "ks", "transfer", "table"};

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

// Inline JSON when the text starts like JSON, otherwise a file path.
Json json_argument(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
    try {
      return Json::parse(text);
    } catch (const Json::parse_error& e) {
      bad(std::string("malformed JSON argument: ") + e.what());
    }
  }
  return read_json_file(text);
}

// "1/2,0,1" or a JSON array.
RatVector vector_argument(const std::string& text) {
  if (text.find('[') != std::string::npos) return rat_vector_from_json(json_argument(text));
  std::vector<Rational> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) parts.push_back(parse_rational(item));
  RatVector v(static_cast<Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) v(static_cast<Index>(i)) = parts[i];
  return v;
}

// "re,im" with decimal or rational parts.
Complex complex_argument(const std::string& text) {
  std::vector<double> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.find('/') != std::string::npos) {
      parts.push_back(parse_rational(item).convert_to<double>());
      continue;
    }
    std::size_t used = 0;
    try {
      parts.push_back(std::stod(item, &used));
    } catch (const std::exception&) {
      bad("malformed number '" + item + "' in tau");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) bad("malformed number '" + item + "' in tau");
  }
  if (parts.size() != 2) bad("tau must be given as re,im");
  return {parts[0], parts[1]};
}

Json complex_json(const Complex& z) {
  Json j;
  j["re"] = z.real();
  j["im"] = z.imag();
  return j;
}

Json header(const std::string& command) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

std::string dump(const Json& j) { return j.dump() + "\n"; }

std::string upper_triangle(const RatMatrix& T) {
  std::string s;
  for (Index i = 0; i < T.rows(); ++i)
    for (Index j = i; j < T.cols(); ++j) s += (s.empty() ? "" : ";") + to_string(T(i, j));
  return s;
}

struct Options {
  unsigned threads = 0;
  std::string output;
  std::string format = "json";

  EnumerationOptions enumeration() const { return {threads}; }
};

// ---------------------------------------------------------------------------
// subcommands

std::string cmd_info(const std::string& lattice) {
  const Lattice L = load_lattice(lattice);
  const Signature sig = signature(L);
  const LatticeInfo info = lattice_info(L);
  const DiscriminantGroup D = discriminant_group(L);
  Json j = header("info");
  j["signature"] = {sig.p, sig.q};
  j["even"] = info.even;
  j["det"] = integer_to_json(Integer(mp::abs(info.det)));
  j["signed_det"] = integer_to_json(info.det);
  j["rank"] = L.rank();
  j["unimodular"] = info.unimodular;
  Json factors = Json::array();
  for (const Integer& d : D.invariant_factors) factors.push_back(integer_to_json(d));
  j["discriminant_group"] = std::move(factors);
  j["discriminant_order"] = integer_to_json(D.order);
  return dump(j);
}

struct CountArgs {
  std::string lattice, t, gram_target, coset, tuple_coset;
};

std::string cmd_count(const CountArgs& a, const Options& o) {
  const Lattice L = load_lattice(a.lattice);
  if (a.t.empty() == a.gram_target.empty()) bad("give exactly one of --t and --gram-target");
  if (!a.t.empty()) {
    const Rational t = parse_rational(a.t);
    const CosetVector h = a.coset.empty() ? zero_coset(L) : make_coset(L, vector_argument(a.coset));
    if (o.format == "csv") {
      std::string out;
      for (Index i = 0; i < L.rank(); ++i) out += (i ? ",x" : "x") + std::to_string(i + 1);
      out += "\n";
      for (const RatVector& v : enumerate_vectors(L, t, h, o.enumeration())) {
        for (Index i = 0; i < v.size(); ++i) out += (i ? "," : "") + to_string(v(i));
        out += "\n";
      }
      return out;
    }
    Json j = header("count");
    j["t"] = rational_to_json(t);
    if (!a.coset.empty()) j["coset"] = to_json(h.h);
    j["count"] = integer_to_json(rep_count(L, t, h, o.enumeration()));
    return dump(j);
  }
  const GramTarget T(rat_matrix_from_json(json_argument(a.gram_target)));
  TupleCoset H = TupleCoset::zero(L, T.size());
  if (!a.tuple_coset.empty()) {
    const RatMatrix rows = rat_matrix_from_json(json_argument(a.tuple_coset));
    if (rows.rows() != T.size()) bad("--tuple-coset needs one vector per row of the target");
    H.entries.clear();
    for (Index i = 0; i < rows.rows(); ++i) H.entries.push_back(make_coset(L, rows.row(i).transpose()));
  }
  const Integer n = tuple_rep_count(L, T, H, o.enumeration());
  if (o.format == "csv") return "count\n" + to_string(n) + "\n";
  Json j = header("count");
  j["T"] = to_json(T.matrix());
  j["count"] = integer_to_json(n);
  return dump(j);
}

struct ThetaArgs {
  std::string lattice, bound, coset, tau;
  int genus = 1;
  bool classical = false, transform = false;
};

std::string cmd_theta(const ThetaArgs& a, const Options& o) {
  const Lattice L = load_lattice(a.lattice);
  if (a.bound.empty()) bad("--bound is required");
  const Rational B = parse_rational(a.bound);
  const CosetVector h = a.coset.empty() ? zero_coset(L) : make_coset(L, vector_argument(a.coset));

  if (a.transform) {
    if (a.tau.empty()) bad("--transform needs --tau");
    const TransformCheck c = theta_transform_check(L, complex_argument(a.tau), B, o.enumeration());
    Json j = header("theta");
    j["transform"] = "inversion";
    j["tau"] = complex_json(complex_argument(a.tau));
    j["bound"] = rational_to_json(B);
    j["residual"] = c.residual;
    j["tail_bound"] = c.tail_bound;
    j["lhs"] = complex_json(c.lhs);
    j["rhs"] = complex_json(c.rhs);
    j["tol"] = kFloatTol;
    return dump(j);
  }
  if (!a.tau.empty()) {
    const ThetaValue v = theta_value(L, h, complex_argument(a.tau), B, o.enumeration());
    Json j = header("theta");
    j["tau"] = complex_json(complex_argument(a.tau));
    j["bound"] = rational_to_json(B);
    j["value"] = complex_json(v.value);
    j["tail_bound"] = v.tail_bound;
    j["tol"] = kFloatTol;
    return dump(j);
  }
  if (a.genus < 1) bad("--genus must be positive");

  if (a.genus == 1) {
    QExpansion f = theta_coeffs(L, h, B, o.enumeration());
    if (a.classical) f = classical_reindex(f);
    if (o.format == "csv") {
      std::string out = "t,coefficient\n";
      for (const auto& [t, c] : f.coeffs) out += to_string(t) + "," + to_string(c) + "\n";
      return out;
    }
    Json j = header("theta");
    j["genus"] = 1;
    j["weight"] = rational_to_json(f.weight);
    j["nome"] = f.nome == Nome::half ? "half" : "full";
    j["bound"] = rational_to_json(f.bound);
    Json coeffs = Json::object();
    for (const auto& [t, c] : f.coeffs) coeffs[to_string(t)] = rational_to_json(c);
    j["coeffs"] = std::move(coeffs);
    return dump(j);
  }

  if (a.classical) bad("--classical applies to genus 1 only");
  TupleCoset H = TupleCoset::zero(L, a.genus);
  if (!a.coset.empty()) H.entries.assign(static_cast<std::size_t>(a.genus), h);
  const FourierTable table = siegel_theta_table(L, a.genus, B, H, o.enumeration());
  if (o.format == "csv") {
    std::string out = "T,rank,count\n";
    for (const FourierEntry& e : table.entries)
      out += upper_triangle(e.T) + "," + std::to_string(e.rank) + "," + to_string(e.count) + "\n";
    return out;
  }
  Json j = header("theta");
  j["genus"] = a.genus;
  j["weight"] = rational_to_json(Rational(L.rank(), 2));
  j["bound"] = rational_to_json(table.bound);
  Json entries = Json::array();
  for (const FourierEntry& e : table.entries) {
    Json row;
    row["T"] = to_json(e.T);
    row["rank"] = e.rank;
    row["count"] = integer_to_json(e.count);
    entries.push_back(std::move(row));
  }
  j["entries"] = std::move(entries);
  return dump(j);
}

std::string cmd_gauss(const std::string& lattice, const std::string& a, const std::string& c) {
  const Lattice L = load_lattice(lattice);
  const Rational ar = parse_rational(a), cr = parse_rational(c);
  if (den(ar) != 1 || den(cr) != 1) bad("--a and --c must be integers");
  const GaussSumValue g = gauss_sum(L, num(ar), num(cr));
  Json j = header("gauss");
  j["a"] = integer_to_json(g.a);
  j["c"] = integer_to_json(g.c);
  j["re"] = g.value.real();
  j["im"] = g.value.imag();
  j["modulus"] = integer_to_json(g.c);
  j["abs"] = std::abs(g.value);
  j["rank"] = g.rank;
  j["tol"] = kFloatTol;
  return dump(j);
}

std::string cmd_milgram(const std::string& lattice) {
  const MilgramReport r = milgram_invariant(load_lattice(lattice));
  Json j = header("milgram");
  j["sum"] = complex_json(r.sum);
  j["predicted"] = complex_json(r.predicted);
  j["signature_mod8"] = r.signature_mod8;
  j["group_order"] = integer_to_json(r.group_order);
  j["agrees"] = r.agrees;
  j["tol"] = kFloatTol;
  return dump(j);
}

struct CliffordArgs {
  std::string lattice, op = "normalize", x, y;
};

std::string cmd_clifford(const CliffordArgs& a) {
  const AlgebraPtr A = clifford_algebra(load_lattice(a.lattice));
  auto need = [&](const std::string& text, const char* flag) {
    if (text.empty()) bad(std::string("--op ") + a.op + " needs " + flag);
    return parse_clifford(A, text);
  };
  Json j = header("clifford");
  j["op"] = a.op;
  if (a.op == "normalize") {
    j["result"] = to_string(need(a.x, "--x"));
  } else if (a.op == "add") {
    j["result"] = to_string(need(a.x, "--x") + need(a.y, "--y"));
  } else if (a.op == "product") {
    j["result"] = to_string(need(a.x, "--x") * need(a.y, "--y"));
  } else if (a.op == "involution") {
    j["result"] = to_string(main_involution(need(a.x, "--x")));
  } else if (a.op == "trace") {
    j["result"] = rational_to_json(trace(need(a.x, "--x")));
  } else if (a.op == "spinor-norm") {
    j["result"] = to_string(spinor_norm(need(a.x, "--x")));
  } else if (a.op == "inverse") {
    j["result"] = to_string(invert(need(a.x, "--x")));
  } else if (a.op == "is-gspin") {
    j["result"] = is_gspin(need(a.x, "--x"));
  } else if (a.op == "delta") {
    j["result"] = to_string(delta(A));
  } else {
    bad("unknown --op " + a.op);
  }
  return dump(j);
}

IntMatrix columns_from_json(const Json& rows, Index n, const char* what) {
  const IntMatrix m = int_matrix_from_json(rows);
  if (m.rows() > 0 && m.cols() != n) bad(std::string(what) + " vectors must have length rank(L)");
  return m.transpose();
}

std::string cmd_ks(const std::string& lattice, const std::string& plane, bool matrices) {
  const Lattice L = load_lattice(lattice);
  const Json p = json_argument(plane);
  if (!p.is_object()) bad("plane input must be a JSON object");
  const PeriodPlane z{rat_vector_from_json(p.value("z1", Json::array())), rat_vector_from_json(p.value("z2", Json::array()))};
  if (!p.contains("negative")) bad("missing key \"negative\"");
  Splitting s;
  s.negative = columns_from_json(p["negative"], L.rank(), "negative");
  s.positive = p.contains("positive") ? columns_from_json(p["positive"], L.rank(), "positive") : IntMatrix(L.rank(), 0);

  const KSReport r = ks_report(L, s, z);
  const SpecialLattice special = special_endo_lattice(L, r.plane);
  Json j = header("ks");
  j["plane"] = {{"z1", to_json(r.plane.z1)}, {"z2", to_json(r.plane.z2)}};
  j["j"] = to_string(r.j);
  j["j_square_scalar"] = rational_to_json(r.j_square_scalar);
  j["alternating"] = r.alternating;
  j["symmetric"] = r.symmetric;
  j["definite"] = r.definite;
  j["inertia"] = {r.inertia.positive, r.inertia.negative, r.inertia.zero};
  j["torus_dim"] = integer_to_json(r.torus_dim);
  j["complex_dim"] = integer_to_json(r.complex_dim);
  j["special_lattice"] = {{"rank", special.rank()}, {"basis", to_json(IntMatrix(special.basis.transpose()))},
                          {"gram", to_json(special.gram)}};
  if (matrices) {
    j["riemann_gram"] = to_json(r.riemann_gram);
    j["hermitian_gram"] = to_json(r.hermitian_gram);
  }
  return dump(j);
}

std::string cmd_transfer(const std::string& input, int embedding) {
  const Json in = json_argument(input);
  const NumberFieldLattice M = in.is_object() && in.contains("order") ? quaternion_from_json(in) : nf_lattice_from_json(in);
  const Lattice L = trace_lattice(M);
  Json j = lattice_to_json(L);
  j["command"] = "transfer";
  j["degree"] = M.field->degree();
  j["rank_F"] = M.rank();
  Json profile = Json::array();
  for (const Signature& s : signature_profile(M)) profile.push_back({s.p, s.q});
  j["signature_profile"] = std::move(profile);
  const Signature sig = signature(L);
  j["signature"] = {sig.p, sig.q};
  j["ks_admissible"] = embedding < 0 ? ks_admissible(M) : ks_admissible(M, embedding);
  if (in.is_object() && in.contains("order")) j["o_f_lattice"] = nf_lattice_to_json(M);
  return dump(j);
}

std::string cmd_table(const std::string& format) {
  const auto rows = feasibility_table();
  if (format == "csv") return feasibility_csv(rows);
  Json j = header("table");
  Json out = Json::array();
  for (const FeasibilityRow& r : rows) out.push_back({{"d", r.d}, {"m", r.m}, {"N", r.N}});
  j["rows"] = std::move(out);
  return dump(j);
}

void write_error(std::ostream& err, const std::string& kind, const std::string& message) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["error"] = kind;
  j["message"] = message;
  err << j.dump() << "\n";
}

// Index of the subcommand in args, skipping global options.
std::size_t find_command(const std::vector<std::string>& args) {
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--threads" || args[i] == "--output" || args[i] == "-o") {
      ++i;
      continue;
    }
    if (!args[i].empty() && args[i][0] == '-') continue;
    return i;
  }
  return args.size();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Integral quadratic lattices, theta series, Clifford algebras and Kuga-Satake data", "k3lat"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opts;
  opts.threads = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--threads", opts.threads, "Worker threads for enumeration")->check(CLI::PositiveNumber);
  app.add_option("-o,--output", opts.output, "Write the primary output to this file");

  std::string lattice;
  std::function<std::string()> action;

  auto* info = app.add_subcommand("info", "Signature, parity, determinant and discriminant group");
  info->add_option("--lattice", lattice, "Built-in name or lattice JSON file")->required();
  info->callback([&] { action = [&] { return cmd_info(lattice); }; });

  CountArgs ca;
  auto* count = app.add_subcommand("count", "Representation numbers of vectors or tuples");
  count->add_option("--lattice", ca.lattice)->required();
  count->add_option("--t", ca.t, "Norm (x, x) = t, rational");
  count->add_option("--gram-target", ca.gram_target, "Gram matrix target as JSON");
  count->add_option("--coset", ca.coset, "Coset vector h in L^vee, e.g. 1/2,0");
  count->add_option("--tuple-coset", ca.tuple_coset, "JSON list of coset vectors for a tuple target");
  count->add_option("--format", opts.format)->check(CLI::IsMember({"json", "csv"}));
  count->callback([&] { action = [&] { return cmd_count(ca, opts); }; });

  ThetaArgs ta;
  auto* theta = app.add_subcommand("theta", "Theta series coefficients, values and the inversion check");
  theta->add_option("--lattice", ta.lattice)->required();
  theta->add_option("--bound", ta.bound, "Norm bound B")->required();
  theta->add_option("--genus", ta.genus, "Genus r");
  theta->add_option("--coset", ta.coset);
  theta->add_option("--tau", ta.tau, "Evaluate at tau = re,im");
  theta->add_flag("--classical", ta.classical, "Index by q = e^{2 pi i tau}");
  theta->add_flag("--transform", ta.transform, "Check theta(-1/tau) against the dual side at --tau");
  theta->add_option("--format", opts.format)->check(CLI::IsMember({"json", "csv"}));
  theta->callback([&] { action = [&] { return cmd_theta(ta, opts); }; });

  std::string ga, gc;
  auto* gauss = app.add_subcommand("gauss", "Normalized lattice Gauss sum");
  gauss->add_option("--lattice", lattice)->required();
  gauss->add_option("--a", ga)->required();
  gauss->add_option("--c", gc)->required();
  gauss->callback([&] { action = [&] { return cmd_gauss(lattice, ga, gc); }; });

  auto* milgram = app.add_subcommand("milgram", "Discriminant-form Gauss sum against the signature");
  milgram->add_option("--lattice", lattice)->required();
  milgram->callback([&] { action = [&] { return cmd_milgram(lattice); }; });

  CliffordArgs cl;
  auto* clifford = app.add_subcommand("clifford", "Exact Clifford algebra arithmetic");
  clifford->add_option("--lattice", cl.lattice)->required();
  clifford->add_option("--op", cl.op)->check(CLI::IsMember(
      {"normalize", "add", "product", "involution", "trace", "spinor-norm", "inverse", "is-gspin", "delta"}));
  clifford->add_option("--x", cl.x, "Element, e.g. '1/2*e{1,2} + 3*e{}'");
  clifford->add_option("--y", cl.y);
  clifford->callback([&] { action = [&] { return cmd_clifford(cl); }; });

  std::string plane;
  bool matrices = false;
  auto* ks = app.add_subcommand("ks", "Kuga-Satake report for a negative plane");
  ks->add_option("--lattice", lattice)->required();
  ks->add_option("--plane", plane, "JSON {z1, z2, negative, positive?} inline or as a file")->required();
  ks->add_flag("--matrices", matrices, "Include the full Gram matrices");
  ks->callback([&] { action = [&] { return cmd_ks(lattice, plane, matrices); }; });

  std::string transfer_input;
  int embedding = -1;
  auto* transfer = app.add_subcommand("transfer", "Trace-form transfer of an O_F-lattice to a Z-lattice");
  transfer->add_option("--input", transfer_input, "O_F-lattice or quaternion-order JSON")->required();
  transfer->add_option("--embedding", embedding, "Distinguished embedding for the admissibility test");
  transfer->callback([&] { action = [&] { return cmd_transfer(transfer_input, embedding); }; });

  std::string table_format = "csv";
  auto* table = app.add_subcommand("table", "Feasibility table of (d, m, N)");
  table->add_option("--format", table_format)->check(CLI::IsMember({"json", "csv"}));
  table->callback([&] { action = [&] { return cmd_table(table_format); }; });

  const std::size_t at = find_command(args);
  const bool wants_help = std::any_of(args.begin(), args.end(), [](const std::string& s) { return s == "-h" || s == "--help"; });
  if (!wants_help && (at == args.size() || std::find(kCommands.begin(), kCommands.end(), args[at]) == kCommands.end())) {
    write_error(err, "UnknownSubcommand", at == args.size() ? "no subcommand given" : "unknown subcommand " + args[at]);
    return kExitUsage;
  }

  std::vector<std::string> rest(args.begin() + 1, args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    write_error(err, "InvalidArguments", e.what());
    return kExitValidation;
  }

  try {
    const std::string text = action();
    if (opts.output.empty()) {
      out << text;
    } else {
      std::ofstream file(opts.output, std::ios::binary);
      if (!(file << text)) throw FileError("cannot write " + opts.output);
    }
    return kExitOk;
  } catch (const FileError& e) {
    write_error(err, "FileError", e.what());
    return kExitFile;
  } catch (const Error& e) {
    write_error(err, e.name(), e.what());
    return kExitValidation;
  } catch (const Json::exception& e) {
    write_error(err, "InvalidInput", e.what());
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    write_error(err, "InvalidInput", e.what());
    return kExitValidation;
  }
}

}  // namespace k3lat
