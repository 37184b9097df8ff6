#pragma once

#include <nlohmann/json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>

namespace lodtex::app {

/// JSON-lines log. Each record gets an "event" field; writes are serialized.
class RunLog {
public:
    RunLog() = default;
    explicit RunLog(const std::filesystem::path& path);

    bool enabled() const noexcept { return out_.is_open(); }
    void write(const std::string& event, nlohmann::json fields = nlohmann::json::object());
    /// {"event":"stage","stage":name,"seconds":s, ...extra}
    void stage(const std::string& name, double seconds, nlohmann::json extra = nlohmann::json::object());

private:
    std::mutex mu_;
    std::ofstream out_;
};

/// Logs a stage record on destruction unless cancelled.
class StageTimer {
public:
    StageTimer(RunLog& log, std::string name, nlohmann::json extra = nlohmann::json::object());
    ~StageTimer();
    StageTimer(const StageTimer&) = delete;
    StageTimer& operator=(const StageTimer&) = delete;

    nlohmann::json& extra() { return extra_; }

private:
    RunLog& log_;
    std::string name_;
    nlohmann::json extra_;
    std::chrono::steady_clock::time_point start_;
};

/// Reads every record of a JSONL file.
std::vector<nlohmann::json> read_run_log(const std::filesystem::path& path);

}  // namespace lodtex::app
