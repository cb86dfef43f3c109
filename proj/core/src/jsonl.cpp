#include "twc/jsonl.hpp"

#include <json.hpp>

#include "twc/error.hpp"
#include "twc/utf8.hpp"

namespace twc {

std::string document_to_json_line(const Document& doc) {
  nlohmann::ordered_json j;
  j["id"] = doc.id;
  j["url"] = doc.url;
  j["date"] = doc.date;
  j["text"] = doc.text;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : doc.meta) meta[k] = v;
  j["meta"] = std::move(meta);
  return j.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace);
}

void write_document_jsonl(const Document& doc, std::ostream& sink) {
  std::string line = document_to_json_line(doc);
  line.push_back('\n');
  sink.write(line.data(), static_cast<std::streamsize>(line.size()));
  if (!sink) throw SinkWriteFailure("failed writing document " + doc.id);
}

std::size_t write_documents_jsonl(std::span<const Document> docs, std::ostream& sink) {
  for (const Document& doc : docs) write_document_jsonl(doc, sink);
  sink.flush();
  if (!sink) throw SinkWriteFailure("failed flushing JSONL sink");
  return docs.size();
}

Document parse_document_json_line(std::string_view line, std::size_t line_number) {
  nlohmann::json j = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw MalformedLine(line_number, "invalid JSON");
  if (!j.is_object()) throw MalformedLine(line_number, "not a JSON object");
  Document doc;
  const auto take = [&](const char* key, std::string& dst) {
    auto it = j.find(key);
    if (it == j.end()) throw MalformedLine(line_number, std::string("missing key \"") + key + "\"");
    if (!it->is_string()) throw MalformedLine(line_number, std::string("key \"") + key + "\" is not a string");
    dst = it->get<std::string>();
  };
  take("id", doc.id);
  take("url", doc.url);
  take("date", doc.date);
  take("text", doc.text);
  if (auto it = j.find("meta"); it != j.end() && !it->is_null()) {
    if (!it->is_object()) throw MalformedLine(line_number, "meta is not an object");
    for (const auto& [k, v] : it->items()) {
      if (v.is_string()) {
        doc.meta[k] = v.get<std::string>();
      } else {
        doc.meta[k] = v.dump();
      }
    }
  }
  doc.text = utf8::sanitize(doc.text);
  return doc;
}

std::optional<Document> JsonlDocumentReader::next() {
  std::string line;
  while (std::getline(source_, line)) {
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (utf8::trim(line).empty()) continue;
    try {
      return parse_document_json_line(line, line_no_);
    } catch (const MalformedLine&) {
      if (policy_ == OnMalformed::kAbort) throw;
      ++malformed_;
    }
  }
  return std::nullopt;
}

}  // namespace twc
