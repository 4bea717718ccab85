// Entry point: mount the app on #app. The service base URL and the
// intro slider bound come from data attributes on the mount node (or the
// ?maxSets= query parameter), so the same build works behind any host.

import { SurveyApi } from "./api.js";
import { SurveyApp } from "./app.js";

function bootstrap(): void {
  const mount = document.getElementById("app");
  if (!mount) throw new Error("missing #app mount node");
  const base = mount.dataset.serviceUrl ?? "";
  const fromQuery = new URLSearchParams(window.location.search).get("maxSets");
  const maxSets = Number(fromQuery ?? mount.dataset.maxSets ?? "10");
  const app = new SurveyApp(mount, { api: new SurveyApi(base), maxSets });
  app.start();
}

bootstrap();
