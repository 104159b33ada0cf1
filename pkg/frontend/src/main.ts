// Dashboard boot: load the working snapshot (first stored snapshot if any,
// built-in basic fixture otherwise) and mount the three panels.

import { ApiClient } from "./api";
import { initialState } from "./state";
import { OptimizerPanel } from "./optimizerPanel";
import { ScorePanel } from "./scorePanel";
import { TrajectoryPanel } from "./trajectoryPanel";

async function boot(): Promise<void> {
  const api = new ApiClient("");
  const state = initialState();

  try {
    const index = await api.snapshots();
    if (index.length > 0 && index[0]) {
      state.workingSnapshot = await api.snapshot(index[0].id);
    }
  } catch {
    // empty or unreachable store: keep the built-in fixture snapshot
  }

  const scoreRoot = document.getElementById("score-panel");
  const trajectoryRoot = document.getElementById("trajectory-panel");
  const optimizerRoot = document.getElementById("optimizer-panel");
  if (!scoreRoot || !trajectoryRoot || !optimizerRoot) {
    throw new Error("panel mount points missing from index.html");
  }

  const scorePanel = new ScorePanel(scoreRoot, api, state);
  const trajectoryPanel = new TrajectoryPanel(trajectoryRoot, api, state);
  new OptimizerPanel(optimizerRoot, api);

  await Promise.all([scorePanel.start(), trajectoryPanel.start()]);
}

window.addEventListener("load", () => {
  void boot();
});
