#pragma once

#include <string>

namespace maxsurf {

// Runs one job: command is one of invariants, verify, build, transform,
// correspond; config_json_text holds the job description (see
// docs/job-schema.json); artifacts are written under out_dir.
//
// Returns the process exit code: 0 success, 1 usage or schema error,
// 2 domain-validity failure, 3 tolerance failure.
int run_job(const std::string& command, const std::string& config_json_text,
            const std::string& out_dir, std::string* log);

}  // namespace maxsurf
