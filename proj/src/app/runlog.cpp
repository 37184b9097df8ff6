#include "lodtex/app/runlog.hpp"

#include "lodtex/core/error.hpp"

namespace lodtex::app {

RunLog::RunLog(const std::filesystem::path& path) : out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw IoError("cannot open run log", path.string());
}

void RunLog::write(const std::string& event, nlohmann::json fields) {
    if (!out_.is_open()) return;
    nlohmann::json rec = {{"event", event}};
    rec.update(fields);
    const std::string line = rec.dump();
    std::lock_guard lock(mu_);
    out_ << line << '\n';
    out_.flush();
}

void RunLog::stage(const std::string& name, double seconds, nlohmann::json extra) {
    nlohmann::json f = {{"stage", name}, {"seconds", seconds}};
    f.update(extra);
    write("stage", std::move(f));
}

StageTimer::StageTimer(RunLog& log, std::string name, nlohmann::json extra)
    : log_(log), name_(std::move(name)), extra_(std::move(extra)), start_(std::chrono::steady_clock::now()) {}

StageTimer::~StageTimer() {
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    try {
        log_.stage(name_, s, extra_);
    } catch (...) {
    }
}

std::vector<nlohmann::json> read_run_log(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open run log", path.string());
    std::vector<nlohmann::json> out;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) out.push_back(nlohmann::json::parse(line));
    return out;
}

}  // namespace lodtex::app
