#include "synth.hpp"

#include <algorithm>
#include <cstdio>

#include "twc/utf8.hpp"

namespace twc::test {

namespace {

std::vector<std::string> split_words(const char* s) {
  std::vector<std::string> out;
  std::string cur;
  for (const char* p = s; *p; ++p) {
    if (*p == ' ') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(*p);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

const char* kStopChars[] = {"的", "了", "是", "在", "我", "有", "和", "就", "不", "也",
                            "人", "都", "一", "個", "上", "很", "到", "要", "會", "著"};

std::string sentences(std::mt19937_64& rng, std::size_t n, const std::vector<std::string>& words,
                      const std::vector<std::string>& joins) {
  std::uniform_int_distribution<std::size_t> len(6, 12);
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  std::uniform_int_distribution<std::size_t> join(0, joins.size() - 1);
  std::uniform_int_distribution<int> coin(0, 2);
  std::string out;
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t k = len(rng);
    for (std::size_t i = 0; i < k; ++i) {
      out += words[pick(rng)];
      if (i + 1 < k && !joins.empty() && coin(rng) == 0) out += joins[join(rng)];
    }
    out += "。";
  }
  return out;
}

}  // namespace

const std::vector<std::string>& traditional_words() {
  static const std::vector<std::string> words = split_words(
      "臺灣 學校 老師 學生 圖書 歷史 文化 經濟 發展 環境 保護 科學 研究 資訊 電腦 醫院 醫生 健康 運動 音樂 "
      "藝術 電影 閱讀 寫作 語言 數學 物理 化學 生物 地理 旅遊 城市 鄉村 農業 漁業 山脈 河流 海洋 天氣 颱風 "
      "地震 節日 傳統 飲食 茶葉 咖啡 麵包 早餐 晚餐 朋友 家庭 父母 孩子 工作 公司 計畫 問題 答案 方法 經驗 "
      "時間 空間 世界 國家 政府 法律 社會 經營 市場 價格 銀行 貨幣 車站 鐵路 飛機 機場 捷運 公車 馬路 橋樑 "
      "建築 房屋 花園 森林 動物 植物 鳥類 昆蟲 季節 春天 夏天 秋天 冬天 溫度 燈光 聲音 顏色 圖畫 書籍 報紙 "
      "雜誌 節目 廣播 電視 觀眾 讀者 作者 記者 選擇 練習 考試 課程 教育 知識 智慧 思考 討論 說明 介紹 認識 "
      "學習 參觀 參加 準備 開始 結束 繼續 變化 進步 發現 記錄 觀察 實驗 結果 原因 影響 重要 簡單 複雜 美麗 "
      "安靜 熱鬧 乾淨 舒服 認真 努力 溫暖 寒冷 港口 島嶼 溪流 稻米 夜市 廟宇 寺院 古蹟 街道 碼頭");
  return words;
}

const std::vector<std::string>& simplified_words() {
  static const std::vector<std::string> words = split_words(
      "这个 学习 发展 经济 环境 国家 时间 问题 开始 认识 说明 进步 历史 图书 电脑 学校 医院 银行 飞机 "
      "机场 铁路 车站 报纸 杂志 节目 广播 电视 观众 读者 记者 选择 练习 考试 课程 教育 讨论 介绍 参观 "
      "准备 结束 继续 变化 发现 记录 观察 实验 结果 影响 简单 复杂 美丽 安静 热闹 干净 舒服 认真 温暖");
  return words;
}

const std::vector<std::string>& stopword_free_words() {
  static const std::vector<std::string> words = [] {
    std::vector<std::string> out;
    for (const std::string& w : traditional_words()) {
      const bool has = std::any_of(std::begin(kStopChars), std::end(kStopChars),
                                   [&](const char* s) { return w.find(s) != std::string::npos; });
      if (!has) out.push_back(w);
    }
    return out;
  }();
  return words;
}

std::string traditional_sentences(std::mt19937_64& rng, std::size_t n) {
  return sentences(rng, n, traditional_words(), {"的", "和", "是", "在", "也"});
}

std::string simplified_sentences(std::mt19937_64& rng, std::size_t n) {
  return sentences(rng, n, simplified_words(), {"的", "和", "是", "在"});
}

std::string stopword_free_sentences(std::mt19937_64& rng, std::size_t n) {
  return sentences(rng, n, stopword_free_words(), {});
}

std::string random_mixed_text(std::mt19937_64& rng, std::size_t max_codepoints) {
  static const std::u32string kAlphabet =
      U"學校老師的是在一個人abcXYZ019 \t\n\n  。，！？…」』）.!?\"'(){}[]（）【】#　 ぁアカ한";
  std::uniform_int_distribution<std::size_t> len(0, max_codepoints);
  std::uniform_int_distribution<std::size_t> pick(0, kAlphabet.size() - 1);
  const std::size_t n = len(rng);
  std::string out;
  for (std::size_t i = 0; i < n; ++i) utf8::append(out, kAlphabet[pick(rng)]);
  return out;
}

Document make_doc(std::string id, std::string text) {
  Document d;
  d.id = std::move(id);
  d.url = "https://example.tw/" + d.id;
  d.date = "2024-06-01T00:00:00Z";
  d.text = std::move(text);
  return d;
}

PlantedCorpus planted_corpus(std::uint64_t seed, std::size_t clusters, std::size_t cluster_size,
                             std::size_t uniques) {
  std::mt19937_64 rng(seed);
  const std::size_t total = clusters * cluster_size + uniques;
  std::vector<std::size_t> ids(total);
  for (std::size_t i = 0; i < total; ++i) ids[i] = i;
  std::shuffle(ids.begin(), ids.end(), rng);
  std::size_t next = 0;
  const auto take_id = [&] {
    char buf[16];
    std::snprintf(buf, sizeof buf, "doc-%03zu", ids[next++]);
    return std::string(buf);
  };

  PlantedCorpus out;
  for (std::size_t c = 0; c < clusters; ++c) {
    const std::string base = traditional_sentences(rng, 25);
    std::vector<std::string> members;
    for (std::size_t m = 0; m < cluster_size; ++m) {
      std::string text = base;
      switch (m % 4) {
        case 1:
          text.replace(text.size() - 3, 3, "！");  // last full stop
          break;
        case 2:
          text = "【轉載】" + text;
          break;
        case 3:
          text.insert(text.size() / 2 - text.size() / 2 % 3, "真的");
          break;
        default:
          break;
      }
      members.push_back(take_id());
      out.docs.push_back(make_doc(members.back(), std::move(text)));
    }
    out.clusters.push_back(std::move(members));
  }
  for (std::size_t u = 0; u < uniques; ++u) {
    out.uniques.push_back(take_id());
    out.docs.push_back(make_doc(out.uniques.back(), traditional_sentences(rng, 25)));
  }
  return out;
}

std::vector<RawRecord> random_records(std::mt19937_64& rng, std::size_t n) {
  std::vector<RawRecord> out;
  std::uniform_int_distribution<int> kind(0, 9);
  std::uniform_int_distribution<std::size_t> paragraphs(1, 6);
  std::uniform_int_distribution<std::size_t> sentences_per(2, 6);
  const auto paras = [&](auto&& gen) {
    std::vector<std::string> ps;
    for (std::size_t i = 0, k = paragraphs(rng); i < k; ++i) ps.push_back(gen(sentences_per(rng)));
    return ps;
  };
  for (std::size_t i = 0; i < n; ++i) {
    RawRecord r;
    r.warc_record_id = "<urn:uuid:synthetic-" + std::to_string(i) + ">";
    r.target_url = "https://site" + std::to_string(i % 37) + ".example.tw/page/" + std::to_string(i);
    r.fetch_date = "2024-06-01T00:00:00Z";
    r.content_type = "text/html; charset=utf-8";
    switch (kind(rng)) {
      case 0:
        r.payload = html_page(paras([&](std::size_t k) { return simplified_sentences(rng, k); }));
        break;
      case 1:
        r.payload = html_page({"This page is written in English only, without any CJK text at all."});
        break;
      case 2:
        r.payload = html_page({"短短的一句話。"});
        break;
      case 3: {
        std::string p = traditional_sentences(rng, 8);
        for (int k = 0; k < 20; ++k) p += "【標籤】";
        r.payload = html_page({p});
        break;
      }
      case 4:
        if (!out.empty()) {
          std::uniform_int_distribution<std::size_t> prev(0, out.size() - 1);
          r.payload = out[prev(rng)].payload;
          break;
        }
        [[fallthrough]];
      case 5:
        if (!out.empty() && i % 2 == 0) {
          r = out.back();
          break;
        }
        [[fallthrough]];
      default:
        r.payload = html_page(paras([&](std::size_t k) { return traditional_sentences(rng, k); }));
        break;
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string html_page(const std::vector<std::string>& paragraphs, const std::string& title) {
  std::string out =
      "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>" + (title.empty() ? "文章" : title) +
      "</title><script>var x = {a: 1};</script></head>\n<body>\n"
      "<nav><a href=\"/\">首頁</a> | <a href=\"/news\">最新消息</a> | <a href=\"/about\">關於我們</a></nav>\n"
      "<article>\n";
  if (!title.empty()) out += "<h1>" + title + "</h1>\n";
  for (const std::string& p : paragraphs) out += "<p>" + p + "</p>\n";
  out += "</article>\n<footer>版權所有 範例網站 保留一切權利</footer>\n</body></html>\n";
  return out;
}

}  // namespace twc::test
