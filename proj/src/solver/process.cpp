#include "refine/solver/process.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>

#include "refine/common/error.hpp"

extern char** environ;

namespace refine::solver {

namespace {

struct Pipe {
    int fd[2] = {-1, -1};
    ~Pipe() {
        for (int f : fd) {
            if (f >= 0) ::close(f);
        }
    }
    void close_end(int i) {
        if (fd[i] >= 0) ::close(fd[i]);
        fd[i] = -1;
    }
};

void ignore_sigpipe() {
    static const bool done = [] {
        struct sigaction sa {};
        sa.sa_handler = SIG_IGN;
        ::sigaction(SIGPIPE, &sa, nullptr);
        return true;
    }();
    (void)done;
}

int reap(pid_t pid) {
    int status = 0;
    while (::waitpid(pid, &status, 0) < 0) {
        if (errno != EINTR) return -1;
    }
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

ProcessResult run_process(const std::string& executable, const std::vector<std::string>& args,
                          const std::string& input, int timeout_ms) {
    ignore_sigpipe();
    Pipe in, out;
    if (::pipe2(in.fd, O_CLOEXEC) != 0 || ::pipe2(out.fd, O_CLOEXEC) != 0) {
        throw Error(ErrorKind::SolverSpawn, executable + ": pipe: " + std::strerror(errno));
    }

    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, in.fd[0], STDIN_FILENO);
    posix_spawn_file_actions_adddup2(&actions, out.fd[1], STDOUT_FILENO);
    posix_spawnattr_t attr;
    posix_spawnattr_init(&attr);
    posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP);
    posix_spawnattr_setpgroup(&attr, 0);

    std::vector<std::string> argv_storage{executable};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_storage) argv.push_back(a.data());
    argv.push_back(nullptr);

    pid_t pid = 0;
    int rc = ::posix_spawnp(&pid, executable.c_str(), &actions, &attr, argv.data(), environ);
    posix_spawn_file_actions_destroy(&actions);
    posix_spawnattr_destroy(&attr);
    if (rc != 0) throw Error(ErrorKind::SolverSpawn, executable + ": " + std::strerror(rc));

    in.close_end(0);
    out.close_end(1);
    ::fcntl(in.fd[1], F_SETFL, O_NONBLOCK);

    ProcessResult result;
    std::size_t written = 0;
    if (input.empty()) in.close_end(1);
    const auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
    char buffer[4096];

    while (out.fd[0] >= 0) {
        auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
        if (left.count() <= 0) {
            result.timed_out = true;
            break;
        }
        pollfd fds[2];
        nfds_t n = 0;
        fds[n++] = {out.fd[0], POLLIN, 0};
        if (in.fd[1] >= 0) fds[n++] = {in.fd[1], POLLOUT, 0};
        int ready = ::poll(fds, n, static_cast<int>(left.count()));
        if (ready < 0) {
            if (errno == EINTR) continue;
            break;
        }
        if (n == 2 && fds[1].revents != 0) {
            if ((fds[1].revents & POLLOUT) != 0) {
                auto w = ::write(in.fd[1], input.data() + written, input.size() - written);
                if (w > 0) written += static_cast<std::size_t>(w);
                if (w < 0 && errno != EAGAIN && errno != EINTR) written = input.size();
            } else {
                written = input.size();  // reader went away
            }
            if (written == input.size()) in.close_end(1);
        }
        if (fds[0].revents != 0) {
            auto r = ::read(out.fd[0], buffer, sizeof buffer);
            if (r > 0) {
                result.output.append(buffer, static_cast<std::size_t>(r));
            } else if (r == 0 || (errno != EINTR && errno != EAGAIN)) {
                out.close_end(0);
            }
        }
    }

    if (result.timed_out) ::kill(-pid, SIGKILL);
    in.close_end(1);
    out.close_end(0);
    result.exit_status = reap(pid);
    if (!result.timed_out) {
        // Stray grandchildren must not outlive the call either.
        ::kill(-pid, SIGKILL);
    }
    return result;
}

} // namespace refine::solver
