#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr discarded (it carries the configuration echo).
Run tw(const std::string& args) {
  const std::string cmd = std::string(TW_BINARY) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string("\"") + TW_DATA_DIR + "/" + name + "\""; }

bool has(const std::string& s, const std::string& sub) { return s.find(sub) != std::string::npos; }

}  // namespace

TEST_CASE("eval") {
  const Run r = tw("eval --s empty --term sigma --at \"A(0,1)\"");
  CHECK(r.code == 0);
  CHECK(has(r.out, "A(0,2)"));
  CHECK(tw("eval --s empty --term \"f(x\" --at \"A(0,1)\"").code == 2);
}

TEST_CASE("distinguish") {
  const Run r = tw("distinguish --s \"{3}\" --t \"{5}\"");
  CHECK(r.code == 0);
  CHECK(has(r.out, "witness_n=3"));
  CHECK(has(r.out, "verdict=Separated"));
}

TEST_CASE("audit") {
  const Run r = tw("audit fg --s \"{3}\"");
  CHECK(r.code == 0);
  CHECK(has(r.out, "fg.15.printed"));
  CHECK(tw("audit nosuch").code == 2);
}

TEST_CASE("frames") {
  const Run built = tw("frame build --s \"{3}\" --lo 0 --hi 1 --index-max 4");
  CHECK(built.code == 0);
  CHECK(has(built.out, "frame 8"));
  const Run dot = tw("frame dot --s empty --lo 0 --hi 0 --index-max 2");
  CHECK(dot.code == 0);
  CHECK(has(dot.out, "digraph"));
  CHECK(tw("frame build --lo 0 --hi 200 --index-max 200").code == 2);
}

TEST_CASE("relalg") {
  const Run ax = tw("relalg axioms --in " + data("a3.atoms"));
  CHECK(ax.code == 0);
  CHECK(has(ax.out, "associative=true"));
  const Run c = tw("relalg compose --s \"{3}\" --scheme " + data("meet.scheme") + " --x \"A(0,1)\" --y \"A(0,1)\"");
  CHECK(c.code == 0);
  CHECK(has(c.out, "A(0,1)"));
  CHECK(tw("relalg compose --s \"{3}\" --x \"A(0,1)\" --y \"A(0,1)\"").code == 2);
  CHECK(tw("relalg minsub --builtin proper3").code == 0);
}

TEST_CASE("search") {
  const Run r = tw("search frames --k 2");
  CHECK(r.code == 0);
  CHECK(has(r.out, "classes=2"));
  CHECK(tw("search frames --k 9").code == 2);
  CHECK(tw("search structures --k 2 --constraints sym,bogus").code == 2);
}

TEST_CASE("usage errors and help") {
  CHECK(tw("--bogus").code == 2);
  CHECK(tw("frame build --s \"{4}\"").code == 2);
  CHECK(tw("--help").code == 0);
  CHECK(tw("audit --help").code == 0);
}

TEST_CASE("output is byte-identical across runs and job counts") {
  const Run a = tw("audit sent --s \"{3,7}\" --jobs 1 --format records");
  const Run b = tw("audit sent --s \"{3,7}\" --jobs 1 --format records");
  const Run c = tw("audit sent --s \"{3,7}\" --jobs 6 --format records");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  CHECK(tw("search frames --k 4 --jobs 1").out == tw("search frames --k 4 --jobs 5").out);
}
