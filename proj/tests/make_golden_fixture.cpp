// Regenerates the golden fixture files in the directory given as argv[1].

#include <filesystem>
#include <fstream>
#include <iostream>

#include "golden_fixture.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_golden_fixture <fixture-dir>\n";
    return 1;
  }
  const std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);
  auto write = [&](const char* name, const std::string& text) {
    std::ofstream(dir / name, std::ios::binary) << text;
  };
  {
    std::ofstream warc(dir / "golden.warc.gz", std::ios::binary);
    twc::test::write_golden_warc(warc);
  }
  write("golden_blocklist.txt", twc::test::golden_blocklist());
  write("golden.conf", twc::test::golden_config());
  write("golden_manifest.tsv", twc::test::golden_manifest());
  std::cout << "wrote fixture to " << dir.string() << "\n";
  return 0;
}
