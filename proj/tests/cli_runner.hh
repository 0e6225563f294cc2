#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace cli
{
    struct Run
    {
        int status = -1;
        std::string out;
    };

    /// Runs the CLI with `args` through the shell. stderr is discarded.
    inline auto run(const std::string &args) -> Run
    {
        std::string command = std::string("\"") + DESCOMP_CLI + "\" " + args + " 2>/dev/null";
        Run r;
        FILE *pipe = popen(command.c_str(), "r");
        if (! pipe)
            return r;
        char buffer[4096];
        std::size_t got;
        while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0)
            r.out.append(buffer, got);
        int raw = pclose(pipe);
        r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
        return r;
    }

    class TempDir
    {
      public:
        explicit TempDir(const std::string &tag)
        {
            auto base = std::filesystem::temp_directory_path();
            for (int i = 0;; ++i) {
                path_ = base / ("descomp-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(i));
                if (std::filesystem::create_directory(path_))
                    break;
            }
        }
        ~TempDir()
        {
            std::error_code ec;
            std::filesystem::remove_all(path_, ec);
        }
        TempDir(const TempDir &) = delete;
        auto operator=(const TempDir &) -> TempDir & = delete;

        auto file(const std::string &name) const -> std::string { return (path_ / name).string(); }

        auto write(const std::string &name, const std::string &text) const -> std::string
        {
            std::ofstream(file(name)) << text;
            return file(name);
        }

      private:
        std::filesystem::path path_;
    };

    inline auto read(const std::string &path) -> std::string
    {
        std::ifstream in(path);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
}
