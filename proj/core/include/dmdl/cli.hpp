#pragma once

namespace dmdl {

/// Entry point of the command-line tool: subcommands `synth`, `detect`
/// and `bench`. Returns 0 on success, 1 on usage errors, 2 on data
/// errors.
int cli_dispatch(int argc, const char* const* argv);

}  // namespace dmdl
