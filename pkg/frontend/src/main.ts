import { Api } from './api.js';
import { AnnotationPane } from './annotate.js';
import { DialoguePane } from './dialogue.js';

const DEFAULT_BASE = 'http://127.0.0.1:8123';

async function init(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const api = new Api(params.get('api') ?? DEFAULT_BASE);

  const dialogueRoot = document.getElementById('dialogue-pane');
  const annotationRoot = document.getElementById('annotation-pane');
  if (!dialogueRoot || !annotationRoot) return;

  const dialogue = new DialoguePane(api, dialogueRoot);
  const annotation = new AnnotationPane(api, annotationRoot);
  await Promise.all([dialogue.start(), annotation.start()]);
}

void init();
