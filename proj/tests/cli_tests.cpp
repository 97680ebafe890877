// Drives the command-line tool end to end: exit codes, certificate files,
// re-verification, tampering, determinism.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

int g_failures = 0;

#define EXPECT(cond, what)                                          \
  do {                                                              \
    if (!(cond)) {                                                  \
      std::cout << "[FAIL] " << what << " (line " << __LINE__       \
                << ")\n";                                           \
      ++g_failures;                                                 \
    } else {                                                        \
      std::cout << "[ ok ] " << what << "\n";                       \
    }                                                               \
  } while (0)

int run(const std::string& cmd) {
  int status = std::system((cmd + " > /dev/null 2>&1").c_str());
  if (status == -1) return -1;
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return -2;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

int main() {
  const std::string tool = CSP_TOOL_PATH;
  const fs::path specs = CSP_SPEC_DIR;
  fs::path tmp = fs::temp_directory_path() / "csp_cli_tests";
  fs::remove_all(tmp);
  fs::create_directories(tmp);

  const std::string s3 = (specs / "s3.spec").string();
  const std::string klein = (specs / "klein.spec").string();
  const std::string trivial = (specs / "trivial.spec").string();
  const std::string n3 = (specs / "n3.spec").string();
  fs::path cert = tmp / "s3.cert";
  fs::path cert2 = tmp / "s3_again.cert";
  fs::path tcert = tmp / "trivial.cert";

  // the sym3 witness runs to completion but the certificate is INVALID:
  // the reduction hypothesis genuinely fails on this input (the acceptance
  // suite carries the witness word)
  EXPECT(run(tool + " witness " + s3 + " -o " + cert.string()) == 4,
         "witness sym3 exits 4 (certificate INVALID)");
  std::string text = slurp(cert);
  EXPECT(contains(text, "verdict INVALID"), "certificate records the verdict");
  EXPECT(contains(text, "flag centralizer-condition false"), "failing flag recorded");
  EXPECT(contains(text, "flag geometrically-characteristic true"), "passing flags recorded");
  EXPECT(contains(text, "flag push-identity true"), "push identity recorded");
  EXPECT(contains(text, "info section-ambiguity-central true"), "weaker condition recorded");

  // re-verification recomputes everything from the embedded spec
  EXPECT(run(tool + " verify " + cert.string()) == 4,
         "verify reproduces the certificate but reports INVALID");

  // tampering: flip a flag; the recomputation must not match
  {
    std::string tampered = text;
    auto pos = tampered.find("flag centralizer-condition false");
    tampered.replace(pos, std::string("flag centralizer-condition false").size(),
                     "flag centralizer-condition true ");
    std::ofstream f(tmp / "tampered.cert", std::ios::binary);
    f << tampered;
  }
  EXPECT(run(tool + " verify " + (tmp / "tampered.cert").string()) != 0,
         "tampered certificate is rejected");

  // determinism: the same spec and seed give byte-identical output
  EXPECT(run(tool + " witness " + s3 + " -o " + cert2.string()) == 4,
         "second witness run exits identically");
  EXPECT(slurp(cert) == slurp(cert2), "certificates are byte-identical");

  // the trivial target: fully valid end to end
  EXPECT(run(tool + " witness " + trivial + " -o " + tcert.string()) == 0,
         "witness on the trivial target exits 0");
  EXPECT(contains(slurp(tcert), "verdict VALID"), "trivial certificate VALID");
  EXPECT(run(tool + " verify " + tcert.string()) == 0, "verify on a valid certificate exits 0");

  // error paths
  EXPECT(run(tool + " witness " + n3) == 2, "puncture count below 4 exits 2");
  EXPECT(run(tool + " witness " + s3 + " --cap 4") == 3, "tiny cap exits 3");
  EXPECT(run(tool + " witness " + klein + " -o " + (tmp / "k.cert").string()) == 3,
         "centered input: centerless replacement exceeds the cap, exit 3");
  EXPECT(run(tool + " witness " + (tmp / "missing.spec").string()) == 2, "missing file exits 2");

  // the push-identity command runs the reduced pipeline
  EXPECT(run(tool + " birman " + klein) == 0, "push identity holds on the klein spec");
  EXPECT(run(tool + " birman " + s3) == 0, "push identity holds on the sym3 spec");

  // the centerless stage: reaches a centerless group over the sym3 base,
  // but cannot over the klein base at ell 2 (the tower is a 2-group), and
  // succeeds again at ell 3
  EXPECT(run(tool + " centerless " + s3) == 0, "centerless stage succeeds on the sym3 spec");
  EXPECT(run(tool + " centerless " + klein) == 4,
         "centerless stage reports failure on the klein spec at ell 2");
  EXPECT(run(tool + " centerless " + klein + " --ell 3") == 0,
         "centerless stage succeeds on the klein spec at ell 3");
  EXPECT(run(tool + " centerless " + s3 + " --json") == 0, "json logging works");

  if (g_failures) {
    std::cout << g_failures << " cli test(s) failed\n";
    return 1;
  }
  std::cout << "all cli tests passed\n";
  return 0;
}
