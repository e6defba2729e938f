# Problem-file language, command dispatch and rendering
